class ValidationError(ValueError):
    pass


def parse_age(text):
    try:
        age = int(text)
    except ValueError as exc:
        raise ValidationError(f"not a number: {text}") from exc
    if not 0 <= age < 150:
        raise ValidationError("age out of range")
    return age


def safe_parse(values):
    good, bad = [], []
    for v in values:
        try:
            good.append(parse_age(v))
        except ValidationError as e:
            bad.append(str(e))
        finally:
            pass
    return good, bad

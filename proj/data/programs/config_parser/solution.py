def parse_config(text):
    """key = value lines; '#' starts a comment; [section] headers."""
    config = {}
    section = config
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = config.setdefault(line[1:-1].strip(), {})
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise SyntaxError(f"line {lineno}: expected key = value")
        section[key.strip()] = convert(value.strip())
    return config


def convert(value):
    for cast in int, float:
        try:
            return cast(value)
        except ValueError:
            pass
    lowered = value.lower()
    if lowered in {"true", "false"}:
        return lowered == "true"
    return value

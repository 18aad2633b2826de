def intersperse(numbers, delimiter):
    if not numbers:
        return []
    result = []
    for n in numbers[:-1]:
        result += [n, delimiter]
    result.append(numbers[-1])
    return result

WORDS = ["zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine"]
VALUE = {w: i for i, w in enumerate(WORDS)}


def sort_numbers(numbers: str) -> str:
    return " ".join(sorted(numbers.split(), key=lambda w: VALUE[w]))

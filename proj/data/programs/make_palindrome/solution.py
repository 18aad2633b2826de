def is_palindrome(s: str) -> bool:
    return s == s[::-1]


def make_palindrome(s: str) -> str:
    if not s:
        return ""
    start = 0
    while not is_palindrome(s[start:]):
        start += 1
    return s + s[:start][::-1]

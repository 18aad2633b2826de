import string

ALPHABET = string.ascii_lowercase


def shift_char(ch, k):
    if ch.lower() not in ALPHABET:
        return ch
    shifted = ALPHABET[(ALPHABET.index(ch.lower()) + k) % 26]
    return shifted.upper() if ch.isupper() else shifted


def encode(text, k=3):
    return "".join(shift_char(c, k) for c in text)


def decode(text, k=3):
    return encode(text, -k)

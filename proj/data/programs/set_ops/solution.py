def compare_teams(a, b):
    a, b = set(a), set(b)
    return {
        "both": sorted(a & b),
        "only_a": sorted(a - b),
        "either": sorted(a | b),
        "one": sorted(a ^ b)
    }


def is_pangram(text):
    return set("abcdefghijklmnopqrstuvwxyz") <= set(text.lower())

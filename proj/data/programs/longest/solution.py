from typing import List, Optional


def longest(strings: List[str]) -> Optional[str]:
    if not strings:
        return None
    best = max(len(s) for s in strings)
    return next(s for s in strings if len(s) == best)

def parse_nested_parens(text):
    def depth(group):
        best = level = 0
        for ch in group:
            level += 1 if ch == "(" else -1
            best = max(best, level)
        return best

    return [depth(g) for g in text.split() if g]

def separate_paren_groups(text):
    groups = []
    depth = 0
    current = []
    for ch in text:
        if ch == " ":
            continue
        current.append(ch)
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                groups.append("".join(current))
                current.clear()
    return groups

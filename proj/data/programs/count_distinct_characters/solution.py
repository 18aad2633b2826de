def count_distinct_characters(text):
    return len({c.lower() for c in text})

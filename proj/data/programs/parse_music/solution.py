NOTE_BEATS = {"o": 4, "o|": 2, ".|": 1}


def parse_music(music):
    return [NOTE_BEATS[note] for note in music.split(" ") if note]

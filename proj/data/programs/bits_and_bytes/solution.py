def checksum(data: bytes) -> int:
    total = 0
    for b in data:
        total = (total << 1 ^ b) & 0xFFFF
    return total


def popcount(n):
    return bin(n).count("1")


HEADER = b"\x89PNG" b"\r\n"

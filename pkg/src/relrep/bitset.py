"""Element sets as int bitmasks; bit i set means element i is a member."""


def to_mask(elements):
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def members(mask):
    """Yield member indices in increasing order."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def full_mask(n):
    return (1 << n) - 1


def popcount(mask):
    return bin(mask).count("1")


def subset(a, b):
    return a & ~b == 0


def sort_key(mask):
    # cardinality first, then the sorted member tuple
    return (popcount(mask), tuple(members(mask)))

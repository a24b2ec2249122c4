"""
Windowed entropy as a texture signal
====================================

The entropy channel measures how disordered the last W bytes are at
every position, scaled from [0, 8] bits onto [0, 255]. Three landmark
windows pin the scale, and sweeping W shows the trade-off between a
crisp local signal and a smooth global one.
"""

import numpy as np

from binviz import entropy_channel, entropy_profile

# Landmark values. A constant window carries no information; a window
# holding every byte value once is maximally disordered; a 50/50 split
# of two values is exactly 1 bit -> 255/8 ~= 32.
constant = bytes([7] * 256)
alphabet = bytes(range(256))
two_point = bytes([0] * 128 + [255] * 128)
print("constant window ->", entropy_channel(constant, 255, 256))
print("full alphabet   ->", entropy_channel(alphabet, 255, 256))
print("two-point 50/50 ->", entropy_channel(two_point, 255, 256))

# A payload with three textures: order, repetition, noise.
rng = np.random.default_rng(99)
payload = (
    b"the quick brown fox jumps over the lazy dog " * 40       # text
    + bytes([0xAB, 0xCD] * 900)                                # tight loop
    + rng.integers(0, 256, 1800).astype(np.uint8).tobytes()    # packed
)

# Shorter windows react faster but saturate on less evidence: with W=16
# even plain text looks busy. Longer windows flatten the response and
# take W bytes to forget a region.
for window in (16, 64, 256, 1024):
    prof = entropy_profile(payload, window)
    text = prof[800:1700].mean()
    loop = prof[2200:3300].mean()
    packed = prof[4000:].mean()
    print(f"W={window:<5} text={text:6.1f}  loop={loop:6.1f}  packed={packed:6.1f}")

# The first W-1 positions use a clamped, growing window, so position 0
# is always entropy 0 (a single byte is a constant window).
prof = entropy_profile(payload, 256)
print("\nposition 0 pixel:", prof[0])
print("profile length equals payload length:", len(prof) == len(payload))

"""
toricprobe: the cohomology of complements of arrangements of subtori in a complex torus.

Start from an arrangement file with toricprobe.serialize.parse_input, build the poset of layers with
toricprobe.arrangement.build_layer_poset, then ask toricprobe.addcoh for the integral cohomology or toricprobe.ospres
for the presentation of the rational cohomology ring.
"""
__version__ = "0.1.0"

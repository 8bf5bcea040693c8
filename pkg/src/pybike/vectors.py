"""Frozen regression vectors, recorded from the first audited run.

They pin this implementation's own behaviour (domain separators, sampling
order, oracle layout).  They are not official BIKE KAT values.
"""

FIXED_WEIGHT_SEED = bytes(range(32))
FIXED_WEIGHT_DOMAIN = 0x00
FIXED_WEIGHT_N, FIXED_WEIGHT_WT = 26, 4
FIXED_WEIGHT_INDICES = (7, 8, 18, 19)

# derive_key_material(bytes(32), TOY)
TOY_H0 = (0, 9, 10)
TOY_H1 = (0, 5, 9)
TOY_SIGMA = "3dc2375af3aa2b4ca0e5f47cf001f0815cf5c9114b81fd9dff4fb4ed96a63304"

# hash_H(bytes(32), TOY) and hash_L of that error vector
TOY_H_E0 = ()
TOY_H_E1 = (9, 11)
TOY_L = "83bba381dc30f709760b544cf640eeeebbde16f05c7a0455f8228bf04cc57e67"

# SL1: keygen(bytes(32)), encaps(pk, 0x11 * 32); SHA3-256 of the wire encodings
SL1_KEY_SEED = bytes(32)
SL1_MESSAGE = bytes([0x11]) * 32
SL1_PK_SHA3 = "45f77e13bd0d66aa4dce3024923a7f4c06380cd59a99b60f37001b7ca31263e2"
SL1_SK_SHA3 = "fea1ed56204fcdef9f81e84f55ae1f33bd4ad5ee8a42b07cf299fac942f5726d"
SL1_CT_SHA3 = "6c2634834b77a84ba243ffe006708a650d1fc3756da31bd7f18c20bc10967f85"
SL1_SHARED = "403bb8aca2726959fe57bbf19a08acb5e54a578daa601470deae30bd21369f1b"

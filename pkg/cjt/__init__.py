"""
    Constant j-rank modules of finite groups: the universal p-nilpotent operator, Jordan types, the
    associated graded sheaves and their K_0 classes.
"""

__version__ = "0.1.0"

"""
Bell SOS toolkit
Bell operators, sum-of-squares certificates of maximal violation and
device-independent randomness for two-qubit systems
"""

__version__ = "0.1.0"
__author__ = "Bell SOS Development Team"

"""
Controllers coordinating core computations and output for each command
"""

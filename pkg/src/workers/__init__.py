"""
Worker pool for independent numerical tasks
"""

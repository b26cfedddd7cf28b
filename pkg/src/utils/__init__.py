"""
Utility modules for logging, validation, CSV and JSON output
"""

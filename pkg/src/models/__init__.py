"""
Data models for observables, states, Bell expressions, results and run configuration
"""

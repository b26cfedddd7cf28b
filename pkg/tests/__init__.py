"""
Test suite for the Bell SOS toolkit
"""

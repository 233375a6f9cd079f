"""
Test suite for ringcross.
"""

"""
Services module for NET map computations
"""

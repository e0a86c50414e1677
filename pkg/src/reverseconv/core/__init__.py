"""
Core tensor types, errors and the WRCT binary format.
"""

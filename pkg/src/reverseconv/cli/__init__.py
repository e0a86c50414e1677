"""
Command-line surface of reverseconv.
"""

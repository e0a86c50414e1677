"""
Dense least-squares oracle for the FFT closed form.
"""

from setuptools import find_packages, setup


setup(
    name='reverseconv', 
    version='0.1.0', 
    description='Weighted reverse convolution: FFT closed-form solver, dense oracle and BCCB analysis', 
    package_dir={'': 'src'}, 
    packages=find_packages('src'), 
    python_requires='>=3.10.0', 
    install_requires=['numpy', 'scipy', 'pandas', 'scikit-learn', 'python-dotenv', 'rich', 'pydantic'], 
    keywords='deconvolution fft tikhonov upsampling'
)

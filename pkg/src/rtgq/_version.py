# src/rtgq/_version.py
__title__ = "rtgq"
__version__ = "0.1.0"

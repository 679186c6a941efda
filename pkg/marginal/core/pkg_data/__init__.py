"""
Packaged data: default configuration and the bundled example circuit.
"""

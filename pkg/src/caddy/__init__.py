"""Diver-to-AUV gesture command pipeline.

Token alphabet and grammar for the CADDIAN gesture language, a streaming
phrase segmenter, an approval-gated mission dispatcher, a tick-based AUV
simulator, a confusion-matrix gesture channel with debouncing, a
multi-descriptor nearest-class-mean forest classifier, and the tablet
feedback service that wires them together.
"""

__version__ = "0.1.0"

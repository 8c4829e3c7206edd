"""Coded systems: language engine, dynamical classification, property P,
synchronized and half-synchronized generators, and a line-cover model."""
from .automaton import FlowerAutomaton, LabeledGraph, NotInLanguage, build_flower, language, periodic_points
from .dynamics import NO, UNKNOWN, YES, classify, return_set
from .generators import (GeneratorFamily, GeneratorSet, NotRelativelyPrime, bezout_augment,
                         frobenius_bound, gcd_lengths, represent)
from .property_p import build_witness, verify_witness
from .syncsys import (HalfSyncSpec, build_half_sync, follower_set, is_synchronizing,
                      synchronized_generator, verify_half_sync)
from .words import Alphabet, Cylinder, WordError, format_word, parse_word

__all__ = [
    "Alphabet", "Cylinder", "FlowerAutomaton", "GeneratorFamily", "GeneratorSet", "HalfSyncSpec",
    "LabeledGraph", "NO", "NotInLanguage", "NotRelativelyPrime", "UNKNOWN", "WordError", "YES",
    "bezout_augment", "build_flower", "build_half_sync", "build_witness", "classify",
    "follower_set", "format_word", "frobenius_bound", "gcd_lengths", "is_synchronizing",
    "language", "parse_word", "periodic_points", "represent", "return_set",
    "synchronized_generator", "verify_half_sync", "verify_witness",
]

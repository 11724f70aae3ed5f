"""Affine Weyl group flip actions on trit states and their combinatorial models."""

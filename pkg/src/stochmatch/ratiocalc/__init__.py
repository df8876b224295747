"""Exact evaluation of F, t*, z, r1, r2, cons1, cons2 and the unmatched-probability bounds."""

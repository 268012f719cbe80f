# distutils: language = c++
# cython: language_level=3
"""Compiled Fock-space kernel; same contract as ``cplstab._pykernel.apply_ops``."""
from fractions import Fraction
from math import lcm

from libcpp.string cimport string
from libcpp.vector cimport vector


cdef extern from "fock_kernel.hpp" namespace "cplstab":
    cdef cppclass Op:
        char kind
        int n
        int power

    cdef cppclass FlatVec:
        vector[int] charges
        vector[vector[int]] parts
        vector[string] nums
        string den

    FlatVec apply_ops_flat(const FlatVec&, const vector[Op]&) except +


def apply_ops(dict vec, ops):
    cdef FlatVec fin
    cdef FlatVec fout
    cdef vector[Op] cops
    cdef Op op
    cdef size_t i
    cdef vector[int] cparts

    if not vec:
        return {}
    den = 1
    for c in vec.values():
        den = lcm(den, c.denominator)
    for (m, parts), c in vec.items():
        fin.charges.push_back(m)
        cparts.clear()
        for p in parts:
            cparts.push_back(p)
        fin.parts.push_back(cparts)
        fin.nums.push_back(str(c.numerator * (den // c.denominator)).encode())
    fin.den = str(den).encode()
    for kind, n, power in ops:
        op.kind = ord(kind)
        op.n = n
        op.power = power
        cops.push_back(op)

    fout = apply_ops_flat(fin, cops)

    out_den = int(fout.den)
    out = {}
    for i in range(fout.charges.size()):
        out[(fout.charges[i], tuple(fout.parts[i]))] = Fraction(int(fout.nums[i]), out_den)
    return out

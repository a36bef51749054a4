"""Shared builders for the test suite."""

import numpy as np

from qtmsim import model


def baths_three(kappa=0.0, T_h=10.0, T_r=2.0, T_c=2.0, f=0.01, Omega=1e3):
    return {
        "h": model.BathSpec("h", T=T_h, f=f, Omega=Omega),
        "r": model.BathSpec("r", T=T_r, f=f, Omega=Omega),
        "c": model.BathSpec("c", T=T_c, f=f, Omega=Omega, kappa=kappa),
    }


def baths_two(kappa=0.0, T_h=10.0, T_c=2.0, f=0.01, Omega=1e3):
    return {
        "h": model.BathSpec("h", T=T_h, f=f, Omega=Omega),
        "c": model.BathSpec("c", T=T_c, f=f, Omega=Omega, kappa=kappa),
    }


def engineered_spec(n=2, m_c=0, E_r=5.0, E_h=4.0, E_c=1.0, g_sector=0.05, g=1.0):
    e_c = (E_c,) * n if isinstance(E_c, float) else tuple(E_c)
    return model.SystemSpec(
        n=n, topology="three_bath", E_h=E_h, E_r=E_r, E_c=e_c,
        interaction=model.EngineeredSectors({m_c: g_sector}), g=g,
    )


def star_spec(n=2, E_h=4.0, E_r=10.0, E_c=(1.0, 1.01), J=-1.0):
    return model.SystemSpec(
        n=n, topology="three_bath", E_h=E_h, E_r=E_r, E_c=tuple(E_c),
        interaction=model.HeisenbergStar(J_h=J, J_r=J),
    )


def random_density_matrix(dim, rng):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def random_hermitian(dim, rng):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2.0

"""Two-mode GPE versus exact Fock treatment of a box-delta double well."""
from .condensate import (Obdm, PhaseState, annihilate0, annihilate1, fit_phase_state,
                         obdm, optimize_rotation, phase_overlap, phase_state,
                         reference_energies, xi3_state)
from .fock import (FockHamiltonian, FockVector, build_hamiltonian, diagonal_crossover,
                   diagonal_energy, diagonalize, energy_curves, exact_crossover,
                   tunneling_element)
from .gpe import VariationalResult, bifurcation_point, minimize_energy, variational_energy
from .modes import DomainError, ModeBasis, chi_integral, eval_modes, mode_basis, solve_wavenumber
from .transform import CatReport, TransformMatrix, build_transform, detect_cat, to_plusminus_basis

__version__ = "0.1.0"

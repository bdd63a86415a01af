"""Glue from a parsed RunConfig to grids, sampled modes and propagation runs."""

from __future__ import annotations

from .config import RunConfig
from .errors import ConfigError
from .grid import Carrier, ComplexRadialField, RadialGrid, make_radial_grid, sample_mode
from .gouy import GouyFit, extract_gouy, extract_gouy_free
from .modes import QuantumNumbers, eval_free_lg, eval_landau_radial
from .propagate import PropagationParams, PropagationRecord, propagate
from .units import BeamContext, ParticleSpec, Species, free_context, make_context

_SPECIES = {"electron": Species.ELECTRON, "positron": Species.POSITRON}


def particle_for(cfg: RunConfig) -> ParticleSpec:
    return ParticleSpec(_SPECIES[cfg.particle], cfg.sz)


def context_for(cfg: RunConfig) -> BeamContext:
    species = _SPECIES[cfg.particle]
    if cfg.b > 0.0:
        return make_context(species, cfg.sz, cfg.b, cfg.k)
    return free_context(species, cfg.sz, cfg.k)


def reference_width(cfg: RunConfig) -> float:
    """Transverse scale the radial box is sized by: w_m, or w0 when b = 0."""
    if cfg.b > 0.0:
        return 2.0 / cfg.b ** 0.5
    if cfg.free_w0 is None:
        raise ConfigError("free-space run (b = 0) requires free.w0", key="free.w0")
    return cfg.free_w0


def grid_for(cfg: RunConfig) -> RadialGrid:
    return make_radial_grid(cfg.grid_r_max_wm * reference_width(cfg), cfg.grid_n_points)


def quantum_numbers_for(cfg: RunConfig) -> QuantumNumbers:
    return QuantumNumbers(cfg.n, cfg.ell)


def mode_field(cfg: RunConfig, carrier: Carrier | None = None,
               normalized: bool = False) -> ComplexRadialField:
    """Sample the configured analytic mode at z = 0 on the configured grid.

    Landau mode when b > 0, free Laguerre-Gauss with waist free.w0 when b = 0.
    """
    qn = quantum_numbers_for(cfg)
    grid = grid_for(cfg)
    if carrier is None:
        carrier = Carrier(cfg.mode)
    if cfg.b > 0.0:
        ctx = context_for(cfg)
        profile = lambda r: eval_landau_radial(qn, ctx.w_m, r)
    else:
        w0 = reference_width(cfg)
        profile = lambda r: eval_free_lg(qn, w0, cfg.k, r, 0.0)
    field = sample_mode(profile, qn.ell, grid, carrier)
    return field.normalized() if normalized else field


def propagation_params(cfg: RunConfig) -> PropagationParams:
    return PropagationParams(
        ctx=context_for(cfg),
        ell=cfg.ell,
        z_max=cfg.prop_z_max,
        n_steps=cfg.prop_n_steps,
        snapshot_stride=cfg.prop_snapshot_stride,
        qn=quantum_numbers_for(cfg),
    )


def run_propagation(cfg: RunConfig) -> PropagationRecord:
    field = mode_field(cfg, carrier=Carrier.PARAXIAL, normalized=True)
    return propagate(field, propagation_params(cfg))


def run_gouy(cfg: RunConfig) -> tuple[PropagationRecord, GouyFit]:
    record = run_propagation(cfg)
    if cfg.b > 0.0:
        fit = extract_gouy(record)
    else:
        fit = extract_gouy_free(record, quantum_numbers_for(cfg),
                                reference_width(cfg), cfg.k)
    return record, fit

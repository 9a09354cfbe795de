"""Energy-conservative and energy-dissipative DG schemes."""
from ..mesh import Formulation
from .common import Mode, SchemeConfig
from .rs import rhs_rs, rs_rates
from .vw import rhs_vw, vw_rates

__all__ = ["Mode", "SchemeConfig", "rhs", "rhs_rs", "rhs_vw", "rate_function",
           "rs_rates", "vw_rates"]

_RATES = {Formulation.RS: rs_rates, Formulation.VW: vw_rates}


def rhs(cfg, st, t):
    return st.with_data(_RATES[st.formulation](cfg, st.mesh, st.basis, st.data, t))


def rate_function(cfg, formulation, mesh, basis):
    """Return ``f(t, data) -> rates`` for marching raw coefficient arrays."""
    rates = _RATES[Formulation(formulation)]
    x_nodes = mesh.nodes(basis)

    def f(t, data):
        return rates(cfg, mesh, basis, data, t, x_nodes=x_nodes)

    return f

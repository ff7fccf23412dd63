"""chaoslab: quantized chaotic maps, random-matrix ensembles, entanglement
statistics, quantum-channel spectra, and concentration-of-measure numerics.

Subpackages group one diagnostic family each:

* ensembles      Ginibre / CUE / COE / GOE / GUE / Haar states / induced states
* maps           classical and quantized standard & baker maps on the torus
* spectral       eigenphases, spacings, ratios, form factor, RMT curves
* states         participation, Shannon / Wehrl entropies, Husimi grids
* designs        frame potentials, Delta_2, twirls, Weingarten moments
* entanglement   Schmidt spectra, Page/Lubkin/MP laws, negativity, concurrence
* operator_ent   operator Schmidt, entangling power, coupled maps
* channels       Kraus/Choi/superoperator/Bloch, random channel spectra
* concentration  Hoeffding / Levy bounds, minimal output entropy
"""

__version__ = "0.1.0"

from . import (channels, concentration, constants, dataio, designs,
               ensembles, entanglement, maps, operator_ent, rng, spectral,
               states)

__all__ = [
    "__version__", "channels", "concentration", "constants", "dataio",
    "designs", "ensembles", "entanglement", "maps", "operator_ent", "rng",
    "spectral", "states",
]

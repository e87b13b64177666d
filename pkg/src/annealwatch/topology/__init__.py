"""Hardware connectivity graphs, defects and idle-qubit regions.

```python
from annealwatch.topology import apply_defects, chimera, idle_region

g = apply_defects(chimera(4), {17})
region = idle_region(g, used={0, 1, 2, 3})
```

Only Chimera graphs are generated. Other topologies (Pegasus, real working graphs) are loaded with
`import_graph`.
"""

from __future__ import annotations

from .chimera import HORIZONTAL, VERTICAL, chimera, chimera_coordinates, chimera_index
from .io import export_graph, import_graph
from .ops import apply_defects, idle_region
from .types import ChimeraShape, Coupler, HardwareGraph, Region

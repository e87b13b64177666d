"""Colorized, stage-aware logging for annealwatch.

```python
from annealwatch.log import WatchLog

logger = WatchLog.get_logger(__name__)
logger.info("Running %s calls.", calls, extra={"stage": "sample"})
```
"""

from __future__ import annotations

from .types import LogLevel
from .watchlog import WatchLog

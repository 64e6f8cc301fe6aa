# SPDX-License-Identifier: Apache-2.0
"""Multi-degree access-optimal MDS array codes."""

from ._tmds import Code, ParameterError, ShardError, compare

__all__ = ["Code", "ParameterError", "ShardError", "compare"]

# Copyright 2026 The dimcert developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math
import re

import numpy as np

_TOKEN = "__dimcert_float_%d__"
_TOKEN_RE = re.compile(r'"__dimcert_float_(\d+)__"')


def format_float(value):
    """17 significant digits, always recognizable as a float."""
    ret = "%.17g" % value
    if not any(c in ret for c in ".en"):
        ret += ".0"
    return ret


def unbounded():
    """Tagged stand-in for +inf, JSON has no portable infinity."""
    return {"unbounded": True}


def to_jsonable(obj):
    """Recursively converts numpy types, reports and infinities into plain python objects."""
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return dict((str(k), to_jsonable(v)) for k, v in obj.items())
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        obj = float(obj)
        if math.isinf(obj) and obj > 0:
            return unbounded()
        if math.isnan(obj) or math.isinf(obj):
            return None
        return obj
    return obj


def dumps(obj, indent=None):
    """Deterministic JSON: sorted keys and every float printed with 17 significant digits."""
    floats = []

    def tokenize(o):
        if isinstance(o, dict):
            return dict((k, tokenize(v)) for k, v in o.items())
        if isinstance(o, list):
            return [tokenize(v) for v in o]
        if isinstance(o, float):
            floats.append(o)
            return _TOKEN % (len(floats) - 1)
        return o

    text = json.dumps(tokenize(to_jsonable(obj)), sort_keys=True, indent=indent)
    return _TOKEN_RE.sub(lambda m: format_float(floats[int(m.group(1))]), text)

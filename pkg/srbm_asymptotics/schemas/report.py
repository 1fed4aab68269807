# Copyright 2017 The srbm-asymptotics Authors
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may
# not use this file except in compliance with the License. You may obtain
# a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
# WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
# License for the specific language governing permissions and limitations
# under the License.

_number_or_null = {"anyOf": [{"type": "number"}, {"type": "null"}]}

_point = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2
}

_regime = {
    "type": "string",
    "enum": ["SaddleDominated", "PoleZetaThetaStarStar", "PoleEtaThetaStar",
             "TwoPoles", "Untreated"]
}

decay_report = {
    "type": "object",
    "properties": {
        "alpha": {"type": "number"},
        "regime": _regime,
        "rate": {"type": "number"},
        "prefactor_exponent": _number_or_null,
        "dominant_points": {"type": "array", "items": _point},
        "leading_constant": _number_or_null,
        "thresholds": {
            "type": "object",
            "additionalProperties": {"type": "number"}
        },
        "case": {"anyOf": [{"type": "string"}, {"type": "null"}]},
        "diagnostics": {"type": "object"}
    },
    "required": ["alpha", "regime", "rate", "prefactor_exponent",
                 "dominant_points"]
}

_pole_candidate = {
    "type": "object",
    "properties": {
        "theta": _point,
        "angle": {"type": "number"},
        "source": {"type": "string"},
        "orbit_depth": {"type": "integer", "minimum": 0},
        "owner": {"type": "string", "enum": ["phi1", "phi2"]},
        "order": {"anyOf": [{"type": "integer"}, {"type": "null"}]}
    },
    "required": ["theta", "source", "orbit_depth", "owner"]
}

pole_sets = {
    "type": "object",
    "properties": {
        "alpha": {"type": "number"},
        "p_prime": {"type": "array", "items": _pole_candidate},
        "p_second": {"type": "array", "items": _pole_candidate}
    },
    "required": ["alpha", "p_prime", "p_second"]
}

product_form = {
    "type": "object",
    "properties": {
        "product_form": {"type": "boolean"},
        "eta": _point,
        "C": {"type": "number"},
        "c1": {"type": "number"},
        "c2": {"type": "number"},
        "residual": _number_or_null
    },
    "required": ["product_form", "residual"]
}

comparison = {
    "type": "object",
    "properties": {
        "alpha": {"type": "number"},
        "regime": _regime,
        "analytic_rate": {"type": "number"},
        "simulated_rate": _number_or_null,
        "simulated_stderr": _number_or_null,
        "quadrature_rate": _number_or_null,
        "verdict": {"type": "string", "enum": ["PASS", "FAIL"]}
    },
    "required": ["alpha", "analytic_rate", "simulated_rate",
                 "quadrature_rate", "verdict"]
}

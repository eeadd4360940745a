"""Instance data model, parsing, validation and arc derivation."""
from .generator import random_instance
from .network import Arc, arcs, arcs_by_node
from .parser import instance_to_dict, load_instance, parse_instance, serialize_instance
from .schema import (
    CANDIDATE,
    DEMAND,
    HOSPITAL,
    ROLES,
    SUPPLY,
    CommoditySpec,
    EntityKind,
    InjurySpec,
    Instance,
    Node,
    VehicleSpec,
)
from .validation import ValidationReport, Violation, validate

__all__ = [
    "CANDIDATE",
    "DEMAND",
    "HOSPITAL",
    "ROLES",
    "SUPPLY",
    "Arc",
    "CommoditySpec",
    "EntityKind",
    "InjurySpec",
    "Instance",
    "Node",
    "ValidationReport",
    "VehicleSpec",
    "Violation",
    "arcs",
    "arcs_by_node",
    "instance_to_dict",
    "load_instance",
    "parse_instance",
    "random_instance",
    "serialize_instance",
    "validate",
]

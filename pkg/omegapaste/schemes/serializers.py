"""
JSON input and output for schemes and globular sets.
"""
from django.core.validators import RegexValidator
from rest_framework import serializers

from .exceptions import OmegaError
from .globular import CELL_NAME, validate_globular_set
from .pasting import PastingScheme


validate_cell_name = RegexValidator(
    rf"^{CELL_NAME.pattern}\Z",
    "Cell names start with a letter or underscore and continue with letters, digits, underscores or primes.",
    code="invalid_cell_name",
)


def as_validation_error(exc):
    """Re-raise a domain error as a serializer error carrying its code."""
    return serializers.ValidationError(exc.message, code=exc.code)


class PastingSchemeSerializer(serializers.Serializer):
    """
    Serializer for a pasting scheme table.

    Fields:
        - tops: k0 ... kr
        - bottoms: b1 ... br (may be empty)
    """
    tops = serializers.ListField(child=serializers.IntegerField(), allow_empty=False)
    bottoms = serializers.ListField(child=serializers.IntegerField(), default=list)

    def validate(self, data):
        try:
            data["scheme"] = PastingScheme(tuple(data["tops"]), tuple(data["bottoms"]))
        except OmegaError as exc:
            raise as_validation_error(exc)
        return data

    def to_representation(self, instance):
        return {"tops": list(instance.tops), "bottoms": list(instance.bottoms)}


class GlobularSetSerializer(serializers.Serializer):
    """
    Serializer for the globular-set presentation.

    Input:
        - max_dim: optional, defaults to the highest populated dimension
        - cells: {"0": [names], "1": [names], ...}
        - src, tgt: {"1": {name: name}, ...}

    Names must be readable by the text syntax (see ``CELL_NAME``).

    Output:
        - the same layout, cells sorted by name
    """
    max_dim = serializers.IntegerField(min_value=-1, required=False)
    cells = serializers.DictField(
        child=serializers.ListField(child=serializers.CharField(validators=[validate_cell_name])),
    )
    src = serializers.DictField(
        child=serializers.DictField(child=serializers.CharField(validators=[validate_cell_name])), default=dict,
    )
    tgt = serializers.DictField(
        child=serializers.DictField(child=serializers.CharField(validators=[validate_cell_name])), default=dict,
    )

    def validate_cells(self, value):
        for key in value:
            if not str(key).isdigit():
                raise serializers.ValidationError(f"dimension key {key!r} is not a natural number.")
        return value

    def validate(self, data):
        try:
            data["globular_set"] = validate_globular_set(data)
        except OmegaError as exc:
            raise as_validation_error(exc)
        return data

    def to_representation(self, instance):
        return instance.to_presentation()

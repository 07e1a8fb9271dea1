"""
JSON input and output for marked carriers.
"""
from rest_framework import serializers

from schemes.exceptions import OmegaError
from schemes.serializers import GlobularSetSerializer, as_validation_error, validate_cell_name

from .cells import extend_with_marks


class MarkedCarrierSerializer(GlobularSetSerializer):
    """
    A globular-set presentation with invertibility marks.

    Extra fields:
        - marks: names of generators that receive formal inverses
        - depth: witness levels supplied by the formal atoms (default 1)
    """
    marks = serializers.ListField(child=serializers.CharField(validators=[validate_cell_name]), default=list)
    depth = serializers.IntegerField(min_value=0, default=1)

    def validate(self, data):
        data = super().validate(data)
        try:
            data["carrier"] = extend_with_marks(data["globular_set"], data["marks"], data["depth"])
        except OmegaError as exc:
            raise as_validation_error(exc)
        return data

    def to_representation(self, instance):
        presentation = instance.base.to_presentation()
        presentation["marks"] = sorted(c.name for c in instance.marks)
        presentation["depth"] = instance.depth
        return presentation

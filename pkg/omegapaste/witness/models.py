import uuid

from django.db import models


class WitnessRecord(models.Model):
    """
    A witness trace emitted by ``omega invert --record``.

    Fields:
        record_id (UUIDField):
            Primary key.

        subject (TextField):
            The witnessed cell, printed.

        dimension (PositiveIntegerField):
            Dimension of the subject.

        depth (PositiveIntegerField):
            Depth the trace was validated at.

        trace (TextField):
            The witness as an s-expression; replayable by ``omega validate --record``.

        carrier (JSONField):
            The marked carrier the cells live in, as accepted by
            MarkedCarrierSerializer.

        created_at (DateTimeField):
            When the record was stored.
    """
    record_id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    subject = models.TextField()
    dimension = models.PositiveIntegerField()
    depth = models.PositiveIntegerField()
    trace = models.TextField()
    carrier = models.JSONField(default=dict)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ["-created_at"]

    def __str__(self):
        return f"Witness {self.record_id} for {self.subject} at depth {self.depth}"

from rest_framework import mixins, viewsets

from evolution import models
from evolution import permissions
from evolution import serializers


class ExperimentViewSet(mixins.DestroyModelMixin,
                        viewsets.ReadOnlyModelViewSet):
    queryset = models.Experiment.objects.all()
    serializer_class = serializers.ExperimentSerializer
    permission_classes = [permissions.IsSuperUserOrReadOnly]


class RunResultViewSet(viewsets.ReadOnlyModelViewSet):
    queryset = models.RunResult.objects.all()
    serializer_class = serializers.RunResultSerializer

    def get_queryset(self):
        """Optionally restrict the results to one experiment with `?experiment=<id>`."""
        queryset = super().get_queryset()
        experiment = self.request.query_params.get('experiment')
        if experiment is not None:
            queryset = queryset.filter(experiment=experiment)
        return queryset

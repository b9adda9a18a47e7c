from rest_framework import serializers


class GoldenCheckSerializer(serializers.Serializer):
    name = serializers.CharField()
    computed = serializers.FloatField()
    expected = serializers.FloatField()
    tolerance = serializers.FloatField()
    difference = serializers.FloatField()
    provenance = serializers.CharField()
    passed = serializers.BooleanField()


class CatalogReportSerializer(serializers.Serializer):
    """
    ``{case, label, status: PASS|FAIL, checks: [...]}``.
    """

    case = serializers.CharField()
    label = serializers.CharField()
    checks = GoldenCheckSerializer(many=True)

    def to_representation(self, instance):
        data = super().to_representation(instance)
        data['status'] = 'PASS' if instance.passed else 'FAIL'
        return data

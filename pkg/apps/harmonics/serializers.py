from rest_framework import serializers


class HarmonicEntrySerializer(serializers.Serializer):
    m = serializers.IntegerField()
    A = serializers.FloatField()
    B = serializers.FloatField()

    def to_representation(self, instance):
        m, a, b = instance
        return {'m': m, 'A': a, 'B': b}


class HarmonicTableSerializer(serializers.Serializer):
    j = serializers.IntegerField()
    entries = HarmonicEntrySerializer(many=True)


class LegendreCosExpansionSerializer(serializers.Serializer):
    j = serializers.IntegerField()
    derivative = serializers.BooleanField()

    def to_representation(self, instance):
        data = super().to_representation(instance)
        data['coefficients'] = [{'m': m, 'p': p} for m, p in instance.coefficients]
        return data


class CoefficientSetSerializer(serializers.Serializer):
    c1 = serializers.FloatField()
    c2 = serializers.FloatField()
    c3 = serializers.FloatField()
    d1 = serializers.FloatField()
    d2 = serializers.FloatField()
    d3 = serializers.FloatField()
    d4 = serializers.FloatField()

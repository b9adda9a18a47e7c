from rest_framework import serializers


class WitnessSerializer(serializers.Serializer):
    k = serializers.IntegerField()
    epsilon_order = serializers.IntegerField()
    stage = serializers.CharField()

    def to_representation(self, instance):
        data = super().to_representation(instance)
        data['A'], data['B'] = instance.coefficient_pair
        data['zeros'] = list(instance.zero_locations)
        return data


class TraceEntrySerializer(serializers.Serializer):
    stage = serializers.CharField()
    k = serializers.IntegerField()
    j = serializers.IntegerField(allow_null=True)
    epsilon_order = serializers.IntegerField()
    decision = serializers.CharField()

    def to_representation(self, instance):
        data = super().to_representation(instance)
        data['coefficients'] = list(instance.coefficients)
        return data


class TransversalityVerdictSerializer(serializers.Serializer):
    """
    ``{status, witness: {k, epsilon_order, A, B, zeros}, trace: [...]}``;
    ``witness`` is null for inconclusive verdicts.
    """

    status = serializers.CharField()

    def to_representation(self, instance):
        data = super().to_representation(instance)
        data['witness'] = WitnessSerializer(instance.witness).data if instance.witness else None
        data['trace'] = TraceEntrySerializer(instance.search_trace, many=True).data
        return data

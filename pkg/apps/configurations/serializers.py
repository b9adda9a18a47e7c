from rest_framework import serializers

from apps.utils.exceptions import InvalidInputError
from .models import CentralConfiguration, PrimaryBody


class PrimaryBodySerializer(serializers.Serializer):
    mass = serializers.FloatField()
    position = serializers.ListField(
        child=serializers.FloatField(), min_length=2, max_length=2
    )

    def to_representation(self, instance):
        return {'mass': instance.mass, 'position': list(instance.position)}


class CentralConfigurationSerializer(serializers.Serializer):
    """
    Validates the configuration JSON ``{"label", "bodies": [{"mass", "position"}]}``
    and turns it into a ``CentralConfiguration``.
    """

    label = serializers.CharField(required=False, allow_blank=True, default='')
    bodies = PrimaryBodySerializer(many=True)

    def validate_bodies(self, value):
        if len(value) < 2:
            raise serializers.ValidationError('at least 2 bodies are required')
        return value

    def validate(self, attrs):
        try:
            attrs['configuration'] = CentralConfiguration(
                bodies=tuple(
                    PrimaryBody(mass=body['mass'], position=tuple(body['position']))
                    for body in attrs['bodies']
                ),
                label=attrs.get('label', ''),
            )
        except InvalidInputError as e:
            raise serializers.ValidationError(str(e))
        return attrs

    def create(self, validated_data):
        return validated_data['configuration']

    def to_representation(self, instance):
        return {
            'label': instance.label,
            'bodies': PrimaryBodySerializer(instance.bodies, many=True).data,
        }


class CentralityReportSerializer(serializers.Serializer):
    residuals = serializers.ListField(child=serializers.ListField(child=serializers.FloatField()))
    max_norm = serializers.FloatField()
    lambda_value = serializers.FloatField(allow_null=True)
    fit_residual = serializers.FloatField(allow_null=True)

    def to_representation(self, instance):
        return {
            'residuals': [list(r) for r in instance.residuals],
            'max_norm': instance.max_norm,
            'lambda': instance.lambda_value,
            'fit_residual': instance.fit_residual,
        }

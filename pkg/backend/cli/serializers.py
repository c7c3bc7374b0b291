"""
Request validation for the batch commands.

Every serializer returns domain objects from `validated_data` so the runner
never touches raw flag values.
"""

import math

from rest_framework import serializers

from core.exceptions import PointInteractionError
from eft.couplings import ContactCouplings, RenormConditions, Scheme
from extension.params import validate_extension


class FiniteFloatField(serializers.FloatField):
    def to_internal_value(self, data):
        value = super().to_internal_value(data)
        if not math.isfinite(value):
            raise serializers.ValidationError("Must be a finite number")
        return value


class ExtensionParamsSerializer(serializers.Serializer):
    alpha = FiniteFloatField()
    beta = FiniteFloatField()
    gamma = FiniteFloatField()
    delta = FiniteFloatField()
    phi = FiniteFloatField()

    def validate(self, attrs):
        try:
            return validate_extension(attrs['alpha'], attrs['beta'], attrs['gamma'], attrs['delta'], attrs['phi'])
        except PointInteractionError as e:
            raise serializers.ValidationError(f"{type(e).__name__}: {e}")


class SchemeSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=[Scheme.NDR, Scheme.PDS, Scheme.CUTOFF], default=Scheme.NDR)
    scale = FiniteFloatField(default=0.0)

    def validate(self, attrs):
        try:
            return Scheme.from_dict(attrs)
        except PointInteractionError as e:
            raise serializers.ValidationError(f"{type(e).__name__}: {e}")


class CouplingsSerializer(serializers.Serializer):
    c0 = FiniteFloatField(default=0.0)
    c1 = FiniteFloatField(default=0.0)
    c1_tilde = FiniteFloatField(default=0.0)
    c2p = FiniteFloatField(default=0.0)
    scheme = SchemeSerializer(required=False)

    def validate(self, attrs):
        scheme = attrs.pop('scheme', None) or Scheme.ndr()
        return ContactCouplings(scheme=scheme, **attrs)


class RenormConditionsSerializer(serializers.Serializer):
    kappa0 = FiniteFloatField()
    phi_rel = FiniteFloatField(default=0.0)
    a_theta = FiniteFloatField(default=0.0)

    def validate(self, attrs):
        conds = RenormConditions(**attrs)
        if abs(conds.strength) > 1:
            raise serializers.ValidationError(
                f"|kappa0 * a_theta| = {abs(conds.strength):.6g} exceeds 1; no real couplings"
            )
        return conds


class MomentumSweepSerializer(serializers.Serializer):
    """A single --k, or k_steps points from k_min to k_max."""
    k = FiniteFloatField(required=False, allow_null=True)
    k_min = FiniteFloatField(required=False, allow_null=True)
    k_max = FiniteFloatField(required=False, allow_null=True)
    k_steps = serializers.IntegerField(min_value=1, default=1)
    spacing = serializers.ChoiceField(choices=['linear', 'log'], default='linear')

    def validate(self, attrs):
        if attrs.get('k') is not None:
            if attrs['k'] <= 0:
                raise serializers.ValidationError("k must be positive")
            return {'k_min': attrs['k'], 'k_max': attrs['k'], 'k_steps': 1, 'spacing': 'linear'}
        if attrs.get('k_min') is None or attrs.get('k_max') is None:
            raise serializers.ValidationError("Give --k or both --k-min and --k-max")
        if attrs['k_min'] <= 0:
            raise serializers.ValidationError("k_min must be positive")
        if attrs['k_max'] < attrs['k_min']:
            raise serializers.ValidationError("k_max must not be below k_min")
        return {key: attrs[key] for key in ('k_min', 'k_max', 'k_steps', 'spacing')}


class TrapSerializer(serializers.Serializer):
    dim = serializers.ChoiceField(choices=[1, 3], default=3)
    a = FiniteFloatField(required=False, allow_null=True)
    unitary = serializers.BooleanField(default=False)
    robin = FiniteFloatField(required=False, allow_null=True)
    m = FiniteFloatField(default=1.0)
    omega = FiniteFloatField(default=1.0)
    levels = serializers.IntegerField(min_value=1, default=5)

    def validate(self, attrs):
        for name in ('m', 'omega'):
            if attrs[name] <= 0:
                raise serializers.ValidationError(f"{name} must be positive")
        if attrs['dim'] == 3:
            given = [attrs.get('a') is not None, attrs['unitary'], attrs.get('robin') is not None]
            if sum(given) != 1:
                raise serializers.ValidationError("3D spectra need exactly one of --a, --unitary, --robin")
        return attrs


class MuSweepSerializer(serializers.Serializer):
    """Renormalization scales for rgflow, evaluated at one momentum."""
    k = FiniteFloatField(default=1.0)
    mu = serializers.ListField(child=FiniteFloatField(), allow_empty=False)

    def validate(self, attrs):
        if attrs['k'] <= 0:
            raise serializers.ValidationError("k must be positive")
        return attrs


class OutputSerializer(serializers.Serializer):
    format = serializers.ChoiceField(choices=['csv', 'json'], default='csv')
    out = serializers.CharField(required=False, allow_null=True, allow_blank=False)

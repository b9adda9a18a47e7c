from django.db.models import IntegerChoices, TextChoices


class SignBranch(TextChoices):
    """
    Branch of the formulas selected by the sign of Θ0.
    """
    UPPER = 'upper'
    LOWER = 'lower'

    @classmethod
    def of(cls, theta0):
        return cls.UPPER if theta0 > 0 else cls.LOWER

    @property
    def sign(self):
        return 1.0 if self == SignBranch.UPPER else -1.0


class VerdictStatus(TextChoices):
    """
    Outcome of the transversality decision tree.
    """
    TRANSVERSAL = 'transversal'
    INCONCLUSIVE = 'inconclusive'


class ClassifyStage(TextChoices):
    """
    Stages of the decision tree, in the order they are executed.
    """
    D_PAIR = 'd_pair'
    D_LADDER = 'd_ladder'
    C_PAIR = 'c_pair'
    HARMONIC_SCAN = 'harmonic_scan'


class StageDecision(TextChoices):
    """
    Decision recorded for each entry of the search trace.
    """
    WITNESS = 'witness'
    VANISHES = 'vanishes'


class FunctionName(TextChoices):
    """
    Named F-functions of the Melnikov integrals (poly:N is parsed apart).
    """
    F4 = 'F4'
    F61 = 'F61'
    F62 = 'F62'


class QuadratureBackend(TextChoices):
    """
    Pipelines able to evaluate a cubic-phase integral.
    """
    DIRECT = 'direct'
    PARTIAL_FRACTIONS = 'partial_fractions'


class ExitCode(IntegerChoices):
    """
    Exit codes of the management commands.
    """
    OK = 0
    USAGE = 1
    NUMERICAL = 2
    GOLDEN = 3


class FlowTime(TextChoices):
    """
    Time variable of an integrated trajectory.
    """
    T = 't'
    TAU = 'tau'
    DUFFING = 'duffing'


class Provenance(TextChoices):
    """
    Origem de um valor de referência do catálogo.
    """
    PUBLISHED = 'published'
    DERIVED = 'derived'
    TRIVIAL = 'trivial'

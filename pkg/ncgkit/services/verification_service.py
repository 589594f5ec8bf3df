"""
Verification Service
Runs the suite of exact and certified-numeric claims and collects them into a report
"""

import random
import time
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

import mpmath
import numpy as np

from ..config import NumericDefaults, get_defaults
from ..errors import NcgkitError, ParameterDomainError
from ..freealg import FreeElement, same_span, theta_phase
from ..heisenberg import (
    STANDARD_MATRICES,
    ModuleParams,
    bimodule_commutation_check,
    left_relation_check,
    random_packet,
    random_word,
    right_module_law_check,
    right_relation_check,
)
from ..nctorus import (
    ComplexStructure,
    QuadIrr,
    SL2Mat,
    delta_tau_leibniz_defect,
    leibniz_defect,
    torus_mul,
    torus_rewrite_system,
    trace_chi,
)
from ..nctorus.torus import commrel_exponent, random_element
from ..spheres import (
    LambdaMat,
    PhiParams,
    build_bilinear_system,
    ch12_closed_form,
    ch12_tensor,
    char_variety_rank,
    hermitian_relations,
    hermitian_substitution,
    line_search,
    r4_relations,
    s2_ch1_check,
    s2_projector,
    s4_algebra,
    s4_projector,
    sigma_map,
    sigma_orbit_check,
    unitarity_expansion,
    verify_projector,
    verify_s4_projector,
)
from ..spheres.charvar import is_parallel
from ..thetaring import (
    GradedRing,
    ThetaChar,
    associativity_defect,
    classify_poli2,
    quadratic_kernel,
    struct_constant_by_window,
    struct_constants,
    theta_const,
    theta_symmetry_check,
)

logger = logging.getLogger(__name__)

MODULES = ('freealg', 'nctorus', 'heisenberg', 'thetaring', 'spheres')
STATUSES = ('exact-pass', 'numeric-pass', 'fail', 'deviation-noted')

GOLDEN = QuadIrr(-1, 1, 2, 5)
RM_MATRIX = SL2Mat(4, -1, 5, -1)
RM_THETA = QuadIrr(5, -1, 10, 5)
RM_TAU = (Fraction(3, 10), Fraction(-1))
GENERIC_PHI = PhiParams((Fraction(1, 7), Fraction(2, 5), Fraction(3, 11)))
ORBIT_RESIDUAL_TOL = 1e-8


def mutated_torus_exponent(n: int, m: int, p: int, q: int) -> int:
    """A wrong monomial law used to check that the suite notices a corrupted phase."""
    return -m * m * p


@dataclass
class Mutations:
    """Deliberate corruptions; the default instance changes nothing."""
    torus_exponent: Callable[[int, int, int, int], int] = commrel_exponent
    s4_scale: Fraction = Fraction(1, 2)
    lambda_symmetric: bool = True

    INJECTIONS = ('torus-phase', 's4-scale', 'lambda-asymmetric')

    @classmethod
    def from_names(cls, names: Optional[List[str]]) -> 'Mutations':
        mutations = cls()
        for name in names or []:
            if name == 'torus-phase':
                mutations.torus_exponent = mutated_torus_exponent
            elif name == 's4-scale':
                mutations.s4_scale = Fraction(1)
            elif name == 'lambda-asymmetric':
                mutations.lambda_symmetric = False
            else:
                raise ParameterDomainError(f"unknown injection {name!r}", f"known: {', '.join(cls.INJECTIONS)}")
        return mutations


@dataclass
class ClaimResult:
    claim_id: str
    anchor: str
    module: str
    status: str
    residual: Optional[float]
    runtime: float
    message: str = ''

    def to_dict(self) -> Dict[str, Any]:
        return {
            'claim': self.claim_id,
            'anchor': self.anchor,
            'module': self.module,
            'status': self.status,
            'residual': self.residual,
            'runtime': round(self.runtime, 3),
            'message': self.message,
        }


@dataclass
class VerificationReport:
    claims: List[ClaimResult] = field(default_factory=list)

    @property
    def failed(self) -> List[ClaimResult]:
        return [c for c in self.claims if c.status == 'fail']

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def counts(self) -> Dict[str, int]:
        return {status: sum(1 for c in self.claims if c.status == status) for status in STATUSES}

    def to_dict(self) -> Dict[str, Any]:
        return {
            'claims': [c.to_dict() for c in self.claims],
            'counts': self.counts(),
            'passed': not self.failed,
        }


@dataclass(frozen=True)
class SampleCounts:
    """Random draws per claim family; the defaults are the acceptance sizes."""
    torus_elements: int = 100
    torus_terms: int = 20
    packets: int = 50
    characteristics: int = 100
    lambdas: int = 20
    charvar_points: int = 100
    orbit_points: int = 3
    orbit_steps: int = 5

    def __post_init__(self):
        for name, value in vars(self).items():
            if value < 1:
                raise ParameterDomainError(f"sample count {name} must be positive, got {value}")

    @classmethod
    def uniform(cls, samples: int) -> 'SampleCounts':
        """Draw every random family `samples` times; element size and orbit shape stay fixed."""
        return cls(torus_elements=samples, packets=samples, characteristics=samples, lambdas=samples,
                   charvar_points=samples)


# a check returns (passed, residual, message); residual None for exact checks
Outcome = Tuple[bool, Optional[float], str]


@dataclass
class Claim:
    claim_id: str
    module: str
    anchor: str
    kind: str
    check: Callable[[], Outcome]
    deviation: str = ''


class VerificationService:
    """Registry of claims, grouped by module, each run in isolation."""

    def __init__(self, defaults: Optional[NumericDefaults] = None, mutations: Optional[Mutations] = None,
                 seed: Optional[int] = None, samples: Optional[int] = None,
                 counts: Optional[SampleCounts] = None):
        self.defaults = defaults or get_defaults()
        self.mutations = mutations or Mutations()
        self.seed = self.defaults.seed if seed is None else seed
        if counts is None:
            counts = SampleCounts.uniform(samples) if samples is not None else SampleCounts()
        self.counts = counts
        self.claims = self._build_claims()
        logger.info(f"Verification Service initialized with {len(self.claims)} claims, seed={self.seed}, {self.counts}")

    def _rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")

    def run(self, only: Optional[List[str]] = None) -> Dict[str, Any]:
        """
        Run every claim of the selected modules.

        Args:
            only: Module names to restrict the suite to

        Returns:
            Dict with success flag, the report and its exit code
        """
        try:
            selected = self._select(only)
            logger.info(f"=== Running verification suite: {len(selected)} claims ===")
            report = VerificationReport()
            for claim in selected:
                report.claims.append(self._run_claim(claim))
            logger.info(f"Verification counts: {report.counts()}")
            return {'success': True, 'report': report, 'exit_code': report.exit_code}
        except NcgkitError as e:
            logger.error(f"Verification suite aborted: {e.message}", exc_info=True)
            return {'success': False, 'error': e.message, 'details': e.details, 'exit_code': e.exit_code}

    def _select(self, only: Optional[List[str]]) -> List[Claim]:
        if not only:
            return list(self.claims)
        unknown = [name for name in only if name not in MODULES]
        if unknown:
            raise ParameterDomainError(f"unknown module(s) {', '.join(unknown)}", f"choose from {', '.join(MODULES)}")
        return [claim for claim in self.claims if claim.module in only]

    def _run_claim(self, claim: Claim) -> ClaimResult:
        logger.info(f"Claim {claim.claim_id}: {claim.anchor}")
        start = time.perf_counter()
        try:
            passed, residual, message = claim.check()
        except Exception as e:
            logger.error(f"Claim {claim.claim_id} raised {type(e).__name__}: {e}", exc_info=True)
            passed, residual, message = False, None, f"{type(e).__name__}: {e}"
        runtime = time.perf_counter() - start
        if not passed:
            status = 'fail'
            logger.warning(f"Claim {claim.claim_id} failed: {message}")
        elif claim.deviation:
            status = 'deviation-noted'
            message = claim.deviation if not message else f"{message}; {claim.deviation}"
        else:
            status = 'exact-pass' if claim.kind == 'exact' else 'numeric-pass'
        return ClaimResult(claim.claim_id, claim.anchor, claim.module, status, residual, runtime, message)

    def _build_claims(self) -> List[Claim]:
        return [
            Claim('freealg.torus-normal-form', 'freealg', 'V U rewrites to e^{-2 pi i theta} U V', 'exact',
                  self._torus_normal_form),
            Claim('freealg.torus-confluence', 'freealg', 'torus rewrite system is locally confluent', 'exact',
                  self._torus_confluence),
            Claim('nctorus.associativity', 'nctorus', 'the product on A_theta is associative', 'exact',
                  self._torus_associativity),
            Claim('nctorus.trace-cyclicity', 'nctorus', 'chi(xy) = chi(yx)', 'exact', self._trace_cyclicity),
            Claim('nctorus.leibniz', 'nctorus', 'delta_1, delta_2 are derivations', 'exact', self._torus_leibniz),
            Claim('nctorus.delta-tau', 'nctorus', 'delta_tau = tau delta_1 + delta_2 is a derivation', 'numeric',
                  self._delta_tau_leibniz),
            Claim('heisenberg.right-relation', 'heisenberg', '(fU)V = e^{2 pi i theta}(fV)U on the Schwartz space',
                  'exact', self._module_right_relation),
            Claim('heisenberg.word-law', 'heisenberg', 'right action respects the torus normal form', 'exact',
                  self._module_word_law),
            Claim('heisenberg.left-relation', 'heisenberg', "U'V' = e^{2 pi i g theta} V'U' on the Schwartz space",
                  'exact', self._module_left_relation),
            Claim('heisenberg.bimodule', 'heisenberg', 'left and right actions commute', 'exact',
                  self._module_commutation),
            Claim('thetaring.theta-oracle', 'thetaring', 'theta_0 at nome e^{-pi} is pi^{1/4} / Gamma(3/4)',
                  'numeric', self._theta_oracle),
            Claim('thetaring.theta-symmetry', 'thetaring', 'theta_{r+1} = theta_r = theta_{-r}', 'numeric',
                  self._theta_symmetry),
            Claim('thetaring.struct-direct-sum', 'thetaring', 'structure constants match direct index-set sums',
                  'numeric', self._struct_direct_sum),
            Claim('thetaring.associativity', 'thetaring', 'B_g(theta, tau) is associative in degrees (1,1,1)',
                  'numeric', self._ring_associativity),
            Claim('thetaring.quadratic-kernel', 'thetaring', 'dim H_g = 5, rank 15, ten quadratic relations, Koszul',
                  'numeric', self._ring_kernel),
            Claim('spheres.s2-projector', 'spheres', 'S2: e^2 = e = e*, ch_0(e) = 0', 'exact', self._s2_projector),
            Claim('spheres.s2-ch1', 'spheres', 'S2: ch_1(e) is the volume form', 'exact', self._s2_ch1,
                  deviation='last summand read as z (x) (x (x) y - y (x) x); coefficient i/4 from the definition'),
            Claim('spheres.s4-confluence', 'spheres', 'S4_theta rewrite system is locally confluent', 'exact',
                  self._s4_confluence, deviation='x is taken central'),
            Claim('spheres.s4-projector', 'spheres', 'S4_theta: e = e^2 = e*, ch_0(e) = ch_1(e) = 0', 'exact',
                  self._s4_projector, deviation='projector scaled by 1/2 and x taken central'),
            Claim('spheres.s3-ch12', 'spheres', 'S3_Lambda: ch_{1/2}(U) = 0 for symmetric Lambda', 'exact',
                  self._s3_ch12),
            Claim('spheres.s3-ch12-nonsymmetric', 'spheres', 'ch_{1/2}(U) is 2 sum Lambda (z (x) z - z (x) z)',
                  'exact', self._s3_ch12_nonsymmetric),
            Claim('spheres.s3-unitarity', 'spheres', 'sigma parts of UU* and U*U span the four-plane relations',
                  'exact', self._s3_unitarity),
            Claim('spheres.s3-hermitian', 'spheres', 'Hermitian generators give the cos / i sin relations', 'exact',
                  self._s3_hermitian),
            Claim('spheres.charvar-diagonal', 'spheres', 'phi = 0: M(u) has rank 3 and sigma is the identity',
                  'numeric', self._charvar_diagonal),
            Claim('spheres.charvar-generic', 'spheres', 'generic phi: random points are off the characteristic variety',
                  'numeric', self._charvar_generic),
            Claim('spheres.charvar-orbits', 'spheres',
                  'generic phi: line search finds rank-3 points whose sigma-orbits stay on the locus',
                  'numeric', self._charvar_orbits),
        ]

    # freealg

    def _torus_normal_form(self) -> Outcome:
        rs = torus_rewrite_system(GOLDEN)
        U, V = rs.table.index('U'), rs.table.index('V')
        reduced = rs.normal_form(FreeElement.word((V, U)))
        expected = FreeElement.word((U, V), theta_phase(GOLDEN, -1))
        return reduced == expected, None, ''

    def _torus_confluence(self) -> Outcome:
        unresolved = torus_rewrite_system(GOLDEN).check_local_confluence()
        return not unresolved, None, f"{len(unresolved)} unresolved pairs" if unresolved else ''

    # nctorus

    def _torus_triples(self, salt: str):
        # every drawn element appears in three consecutive triples
        rng = self._rng(salt)
        elements = [random_element(rng, terms=self.counts.torus_terms, radius=2)
                    for _ in range(self.counts.torus_elements)]
        n = len(elements)
        for k in range(n):
            yield elements[k], elements[(k + 1) % n], elements[(k + 2) % n]

    def _torus_associativity(self) -> Outcome:
        exponent = self.mutations.torus_exponent
        for x, y, z in self._torus_triples('assoc'):
            left = torus_mul(torus_mul(x, y, GOLDEN, exponent), z, GOLDEN, exponent)
            right = torus_mul(x, torus_mul(y, z, GOLDEN, exponent), GOLDEN, exponent)
            if not left == right:
                return False, None, 'associativity fails on a random triple'
        return True, None, ''

    def _trace_cyclicity(self) -> Outcome:
        exponent = self.mutations.torus_exponent
        for x, y, _ in self._torus_triples('trace'):
            if not (trace_chi(torus_mul(x, y, GOLDEN, exponent)) - trace_chi(torus_mul(y, x, GOLDEN, exponent))).is_zero():
                return False, None, 'chi(xy) != chi(yx) on a random pair'
        return True, None, ''

    def _torus_leibniz(self) -> Outcome:
        for x, y, _ in self._torus_triples('leibniz'):
            for j in (1, 2):
                if not leibniz_defect(j, x, y, GOLDEN).is_zero():
                    return False, None, f"delta_{j} violates the Leibniz rule"
        return True, None, ''

    def _delta_tau_leibniz(self) -> Outcome:
        tau = ComplexStructure.from_parts(Fraction(3, 10), Fraction(-1))
        worst = mpmath.mpf(0)
        for x, y, _ in self._torus_triples('delta-tau'):
            worst = max(worst, delta_tau_leibniz_defect(tau, x, y, GOLDEN, self.defaults.bits))
        bound = mpmath.ldexp(1, -self.defaults.bits + 32)
        return worst <= bound, float(worst), ''

    # heisenberg

    def _packets(self, salt: str):
        # round robin over c so every degree gets a share of the packets
        rng = self._rng(salt)
        degrees = sorted(STANDARD_MATRICES)
        params = {c: ModuleParams(STANDARD_MATRICES[c], GOLDEN) for c in degrees}
        for k in range(max(self.counts.packets, len(degrees))):
            c = degrees[k % len(degrees)]
            yield rng, params[c], random_packet(rng, c)

    def _module_right_relation(self) -> Outcome:
        for _, params, f in self._packets('right'):
            if not right_relation_check(f, params):
                return False, None, f"right relation fails for g={params.g}"
        return True, None, ''

    def _module_word_law(self) -> Outcome:
        for rng, params, f in self._packets('word'):
            if not right_module_law_check(f, params, random_word(rng, 4)):
                return False, None, f"word law fails for g={params.g}"
        return True, None, ''

    def _module_left_relation(self) -> Outcome:
        for _, params, f in self._packets('left'):
            if not left_relation_check(f, params):
                return False, None, f"left relation fails for g={params.g}"
        return True, None, ''

    def _module_commutation(self) -> Outcome:
        for _, params, f in self._packets('bimodule'):
            results = bimodule_commutation_check(f, params)
            if not all(results.values()):
                broken = [name for name, ok in results.items() if not ok]
                return False, None, f"{', '.join(broken)} do not commute for g={params.g}"
        return True, None, ''

    # thetaring

    def _theta_oracle(self) -> Outcome:
        eps = self.defaults.eps
        value = theta_const(ThetaChar(Fraction(0)), (0, 1), eps)
        with mpmath.workprec(self.defaults.bits):
            expected = mpmath.pi ** mpmath.mpf(0.25) / mpmath.gamma(mpmath.mpf(0.75))
            residual = abs(value.value - expected)
        return residual <= eps, float(residual), value.format(eps)

    def _theta_symmetry(self) -> Outcome:
        rng = self._rng('theta-symmetry')
        worst = 0.0
        for _ in range(self.counts.characteristics):
            ch = ThetaChar(Fraction(rng.randint(-24, 24), rng.randint(1, 12)), Fraction(rng.randint(1, 8), rng.randint(1, 4)))
            result = theta_symmetry_check(ch, (Fraction(rng.randint(-4, 4), 5), Fraction(rng.randint(2, 10), 5)),
                                          self.defaults.eps)
            worst = max(worst, float(result['shift_defect']), float(result['reflect_defect']))
            if not result['ok']:
                return False, worst, f"symmetry fails for r={ch.r}, l={ch.l}"
        return True, worst, ''

    def _struct_direct_sum(self) -> Outcome:
        g = SL2Mat(1, 0, 1, 1)
        tau = (Fraction(0), Fraction(-1))
        eps = self.defaults.eps
        tensor = struct_constants(g, g, None, tau, eps, self.defaults.bits)
        worst = mpmath.mpf(0)
        for gamma, alpha, beta, value, _ in tensor.rows():
            direct = struct_constant_by_window(g, g, tau, alpha, beta, gamma, window=60, bits=self.defaults.bits)
            worst = max(worst, abs(value - direct))
        return worst <= eps, float(worst), ''

    def _rm_ring(self) -> GradedRing:
        return GradedRing(RM_MATRIX, RM_THETA, RM_TAU, self.defaults.eps, self.defaults.bits)

    def _ring_associativity(self) -> Outcome:
        report = associativity_defect(self._rm_ring(), 1, 1, 1)
        passed = report.defect <= 1e-9 and report.within_bound
        return passed, float(report.defect), f"{report.triples} triples, error bound {mpmath.nstr(report.error_bound, 3)}"

    def _ring_kernel(self) -> Outcome:
        ring = self._rm_ring()
        kernel = quadratic_kernel(ring, self.defaults.tol)
        label = classify_poli2(ring.g)
        passed = ring.dim(1) == 5 and kernel.rank == 15 and kernel.kernel_dim == 10 and label == 'koszul'
        gap = float(kernel.singular_values[-1] / kernel.singular_values[0])
        return passed, gap, f"rank {kernel.rank}, kernel {kernel.kernel_dim}, {label}"

    # spheres

    def _s2_projector(self) -> Outcome:
        checks = verify_projector(s2_projector())
        return all(checks.values()), None, '' if all(checks.values()) else f"failed: {checks}"

    def _s2_ch1(self) -> Outcome:
        return s2_ch1_check(s2_projector()), None, ''

    def _s4_confluence(self) -> Outcome:
        algebra = s4_algebra(Fraction(1, 3), check=False)
        unresolved = algebra.rewrite_system.check_local_confluence()
        holds = algebra.relations_hold()
        passed = not unresolved and all(holds.values())
        return passed, None, '' if passed else f"{len(unresolved)} unresolved pairs, relations {holds}"

    def _s4_projector(self) -> Outcome:
        algebra = s4_algebra(Fraction(1, 3))
        checks = verify_s4_projector(algebra, s4_projector(algebra, self.mutations.s4_scale))
        return all(checks.values()), None, '' if all(checks.values()) else f"failed: {checks}"

    def _sphere_lambda(self, rng: random.Random) -> LambdaMat:
        if self.mutations.lambda_symmetric:
            return LambdaMat.from_phi(PhiParams.random(rng))
        return LambdaMat.random_nonsymmetric(rng)

    def _s3_ch12(self) -> Outcome:
        rng = self._rng('ch12')
        for _ in range(self.counts.lambdas):
            lam = self._sphere_lambda(rng)
            if not ch12_tensor(lam).is_zero():
                return False, None, 'ch_{1/2}(U) is nonzero'
        return True, None, ''

    def _s3_ch12_nonsymmetric(self) -> Outcome:
        rng = self._rng('ch12-nonsymmetric')
        for _ in range(self.counts.lambdas):
            lam = LambdaMat.random_nonsymmetric(rng)
            tensor = ch12_tensor(lam)
            if tensor.is_zero() or not tensor == ch12_closed_form(lam):
                return False, None, 'ch_{1/2}(U) differs from the closed form'
        return True, None, ''

    def _s3_unitarity(self) -> Outcome:
        rng = self._rng('unitarity')
        for _ in range(self.counts.lambdas):
            lam = LambdaMat.from_phi(PhiParams.random(rng))
            relations = r4_relations(lam, fold=False)
            uu, u_u = unitarity_expansion(lam)
            if not same_span(uu, relations.relations[:3]) or not same_span(u_u, relations.relations[3:]):
                return False, None, 'unitarity components do not span the relations'
        return True, None, ''

    def _s3_hermitian(self) -> Outcome:
        rng = self._rng('hermitian')
        for _ in range(self.counts.lambdas):
            phi = PhiParams.random(rng)
            if not same_span(hermitian_substitution(phi).relations, hermitian_relations(phi).relations):
                return False, None, f"spans differ at phi={phi.phi}"
        return True, None, ''

    def _charvar_diagonal(self) -> Outcome:
        system = build_bilinear_system(PhiParams((0, 0, 0)))
        rng = np.random.default_rng(self.seed)
        worst = 0.0
        for _ in range(self.counts.charvar_points):
            u = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            v = sigma_map(u, system, self.defaults.tol)
            if char_variety_rank(u, system, self.defaults.tol) > 3 or v is None or not is_parallel(u, v, 1e-9):
                return False, None, 'sigma is not the identity at phi = 0'
            worst = max(worst, system.residual(u, v))
        return True, worst, ''

    def _charvar_generic(self) -> Outcome:
        system = build_bilinear_system(GENERIC_PHI)
        rng = np.random.default_rng(self.seed)
        for _ in range(self.counts.charvar_points):
            u = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            if char_variety_rank(u, system, self.defaults.tol) != 4:
                return False, None, 'a random point has rank below four'
        return True, None, ''

    def _charvar_orbits(self) -> Outcome:
        system = build_bilinear_system(GENERIC_PHI)
        rng = np.random.default_rng(self.seed)
        rows = line_search(system, self.counts.orbit_points, rng, self.defaults.tol)
        if len(rows) < self.counts.orbit_points:
            return False, None, f"line search found {len(rows)} of {self.counts.orbit_points} rank-3 points"
        worst = 0.0
        for row in rows:
            if row['rank'] != 3:
                return False, None, f"line search returned a point of rank {row['rank']}"
            report = sigma_orbit_check(row['u'], system, steps=self.counts.orbit_steps, tol=self.defaults.tol)
            worst = max(worst, report.max_residual)
            if report.left_locus or report.max_residual >= ORBIT_RESIDUAL_TOL:
                return False, worst, f"orbit {report.to_dict()}"
        return True, worst, f"{len(rows)} orbits of {self.counts.orbit_steps} steps"

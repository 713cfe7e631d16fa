from collections import namedtuple
from dataclasses import dataclass

import numpy as np
from scipy import signal

from src.config import LPC_ORDER
from src.errors import (OrderTooLarge, DegenerateFrame, UnstableFilter, NonConvergence,
						ConjugateViolation, DomainError)


REAL_POLE_TOLERANCE = 1e-9
ROOT_RESIDUAL_TOLERANCE = 1e-8
CONJUGATE_TOLERANCE = 1e-9
MAX_POLE_RADIUS = 0.999


Prediction = namedtuple('Prediction', ['coeffs', 'gain', 'reflection'])


@dataclass(frozen=True, eq=False)
class LpcFrame:
	'''All-pole model of one frame, A(z) = 1 + sum a_k z^-k.'''

	coeffs: np.ndarray
	gain: float
	residual: np.ndarray

	@property
	def order(self):
		return len(self.coeffs)

	def polynomial(self):
		return np.concatenate(([1.0], self.coeffs))


@dataclass(frozen=True, eq=False)
class PoleSet:

	poles: np.ndarray

	def __len__(self):
		return len(self.poles)

	@property
	def magnitudes(self):
		return np.abs(self.poles)

	@property
	def phases(self):
		return np.angle(self.poles)

	def is_real(self):
		return np.abs(self.poles.imag) < REAL_POLE_TOLERANCE

	def is_stable(self):
		return bool(np.all(self.magnitudes < 1.0))

	def is_conjugate_closed(self, tol=CONJUGATE_TOLERANCE):
		upper = np.sort_complex(self.poles[self.poles.imag > 0])
		lower = np.sort_complex(np.conj(self.poles[self.poles.imag < 0]))
		return len(upper) == len(lower) and bool(np.all(np.abs(upper - lower) <= tol))


def autocorrelate(frame, p=LPC_ORDER):

	x = np.asarray(frame, dtype=np.float64)

	if len(x) == 0:
		raise DegenerateFrame('empty frame')
	if p >= len(x):
		raise OrderTooLarge('order {0} needs more than {1} samples'.format(p, len(x)))

	return np.array([np.dot(x[:len(x) - k], x[k:]) for k in range(p + 1)])


def levinson_durbin(r, p=LPC_ORDER):

	r = np.asarray(r, dtype=np.float64)

	if len(r) < p + 1:
		raise OrderTooLarge('order {0} needs {1} lags, got {2}'.format(p, p + 1, len(r)))
	if not r[0] > 0:
		raise DegenerateFrame('zero-energy frame')

	r = r[:p + 1].copy()
	# white-noise floor keeps the Toeplitz matrix positive definite
	r[0] = r[0] * (1.0 + 1e-9) + 1e-12

	a = np.zeros(p + 1)
	a[0] = 1.0
	reflection = np.zeros(p)
	error = r[0]

	for i in range(1, p + 1):

		acc = r[i] + np.dot(a[1:i], r[i - 1:0:-1])
		k = -acc / error

		if not -1.0 < k < 1.0:
			raise DegenerateFrame('reflection coefficient {0} at stage {1}'.format(k, i))

		a[1:i] = a[1:i] + k * a[i - 1:0:-1]
		a[i] = k
		reflection[i - 1] = k
		error *= (1.0 - k * k)

	return Prediction(a[1:], float(np.sqrt(max(error, 0.0))), reflection)


def is_minimum_phase(coeffs):
	'''Step-down recursion: every reflection coefficient strictly inside (-1, 1).'''

	a = np.concatenate(([1.0], np.asarray(coeffs, dtype=np.float64)))

	for m in range(len(a) - 1, 0, -1):
		k = a[m]
		if not abs(k) < 1.0:
			return False
		a = (a[:m] - k * a[m:0:-1]) / (1.0 - k * k)

	return True


def inverse_filter(frame, coeffs):
	return signal.lfilter(np.concatenate(([1.0], coeffs)), [1.0], np.asarray(frame, dtype=np.float64))


def synthesis_filter(residual, coeffs, poles=None):
	'''Stability is read from poles when the caller already holds them.'''

	stable = poles.is_stable() if poles is not None else is_minimum_phase(coeffs)

	if not stable:
		raise UnstableFilter('synthesis filter has a pole on or outside the unit circle')

	return signal.lfilter([1.0], np.concatenate(([1.0], coeffs)), np.asarray(residual, dtype=np.float64))


def analyze_frame(frame, p=LPC_ORDER):

	r = autocorrelate(frame, p)
	prediction = levinson_durbin(r, p)
	residual = inverse_filter(frame, prediction.coeffs)

	return LpcFrame(prediction.coeffs, prediction.gain, residual)


def pair_conjugates(roots):
	'''
		Snap near-real roots onto the real axis and match the remaining ones
		with their nearest conjugate, symmetrized to an exact pair.
	'''

	roots = np.asarray(roots, dtype=np.complex128)
	real_mask = np.abs(roots.imag) < REAL_POLE_TOLERANCE

	paired = [complex(z.real, 0.0) for z in roots[real_mask]]

	upper = sorted(roots[~real_mask & (roots.imag > 0)], key=lambda z: (np.angle(z), abs(z)))
	lower = list(roots[~real_mask & (roots.imag < 0)])

	for z in upper:

		if not lower:
			paired.append(complex(z.real, 0.0))
			continue

		distances = [abs(w - np.conj(z)) for w in lower]
		w = lower.pop(int(np.argmin(distances)))

		radius = 0.5 * (abs(z) + abs(w))
		phase = 0.5 * (np.angle(z) - np.angle(w))
		pole = radius * np.exp(1j * phase)

		paired.append(pole)
		paired.append(np.conj(pole))

	# unmatched lower-half roots have lost their partner to the real axis
	for w in lower:
		paired.append(complex(w.real, 0.0))

	return np.array(paired, dtype=np.complex128)


def find_poles(coeffs):

	coeffs = np.asarray(coeffs, dtype=np.float64)

	if len(coeffs) < 1:
		raise DomainError('root finding needs order >= 1')

	polynomial = np.concatenate(([1.0], coeffs))

	try:
		# eigenvalues of the companion matrix
		roots = np.roots(polynomial)
	except np.linalg.LinAlgError as e:
		raise NonConvergence('companion eigenvalues did not converge: {0}'.format(e))

	if len(roots) != len(coeffs) or not np.all(np.isfinite(roots)):
		raise NonConvergence('root finder returned {0} roots for order {1}'.format(len(roots), len(coeffs)))

	scale = np.polyval(np.abs(polynomial), np.maximum(np.abs(roots), 1.0))
	residual = np.abs(np.polyval(polynomial, roots)) / scale
	if np.max(residual) > ROOT_RESIDUAL_TOLERANCE:
		raise NonConvergence('root residual {0:.3g} above tolerance'.format(np.max(residual)))

	return PoleSet(pair_conjugates(roots))


def poles_to_coeffs(ps):

	poles = ps.poles if isinstance(ps, PoleSet) else np.asarray(ps, dtype=np.complex128)

	if len(poles) == 0:
		return np.zeros(0)

	polynomial = np.poly(poles)

	if np.iscomplexobj(polynomial):
		if np.max(np.abs(polynomial.imag)) > CONJUGATE_TOLERANCE:
			raise ConjugateViolation('pole set is not closed under conjugation')
		polynomial = polynomial.real

	return np.asarray(polynomial[1:], dtype=np.float64)


def clamp_poles(ps, max_radius=MAX_POLE_RADIUS):

	poles = ps.poles.copy()
	radius = np.abs(poles)
	over = radius >= max_radius
	poles[over] = poles[over] / radius[over] * max_radius

	return PoleSet(poles)

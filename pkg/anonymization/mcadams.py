'''
	McAdams anonymization: frame -> LPC analysis -> residual
								 -> poles -> phi ** alpha -> coefficients -> resynthesis
	The coefficient alpha is drawn once per utterance from U(alpha_min, alpha_max).
'''

import hashlib
import logging
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from audio.framing import FramePlan, frame_signal, overlap_add
from audio.wavio import Waveform
from lpc.core import (LpcFrame, PoleSet, analyze_frame, find_poles, poles_to_coeffs, clamp_poles,
					  synthesis_filter, MAX_POLE_RADIUS)
from src.config import ALPHA_MIN, ALPHA_MAX, LPC_ORDER, SEED
from src.errors import (DomainError, EmptySignal, NonConvergence, DegenerateFrame, FramePassthrough,
						UnstableFilter, ConjugateViolation)


@dataclass(frozen=True)
class McAdamsConfig:

	alpha_min: float = ALPHA_MIN
	alpha_max: float = ALPHA_MAX
	lpc_order: int = LPC_ORDER
	plan: FramePlan = field(default_factory=FramePlan.default, compare=False)
	master_seed: int = SEED
	match_energy: bool = False

	def __post_init__(self):

		if not 0.0 < self.alpha_min <= self.alpha_max < 1.0:
			raise ValueError('alpha range must satisfy 0 < alpha_min <= alpha_max < 1, got ({0}, {1})'.format(self.alpha_min, self.alpha_max))
		if not 0 < self.lpc_order < self.plan.frame_len:
			raise ValueError('lpc order {0} out of range for frame length {1}'.format(self.lpc_order, self.plan.frame_len))


@dataclass(frozen=True)
class UtteranceDraw:

	utterance_id: str
	alpha: float


def utterance_key(master_seed, utterance_id):
	digest = hashlib.blake2b('{0}\x00{1}'.format(int(master_seed), utterance_id).encode('utf-8'), digest_size=16).digest()
	return int.from_bytes(digest, 'little')


def draw_alpha(cfg, utterance_id):
	'''Counter-based draw keyed by (seed, utterance id) only.'''

	generator = np.random.Generator(np.random.Philox(key=utterance_key(cfg.master_seed, utterance_id)))
	u = generator.random()

	return UtteranceDraw(utterance_id, cfg.alpha_min + u * (cfg.alpha_max - cfg.alpha_min))


def transform_phase(phi, alpha):

	phi_arr = np.asarray(phi, dtype=np.float64)

	if not (np.all(phi_arr > 0.0) and np.all(phi_arr < np.pi)):
		raise DomainError('phase must lie in (0, pi), got {0}'.format(phi))
	if not 0.0 < alpha <= 1.0:
		raise DomainError('McAdams coefficient must lie in (0, 1], got {0}'.format(alpha))

	shifted = phi_arr ** alpha

	return float(shifted) if np.ndim(phi) == 0 else shifted


def shift_poles(ps, alpha, max_radius=MAX_POLE_RADIUS):

	real = ps.is_real()
	upper = ps.poles[~real & (ps.poles.imag > 0)]

	new_upper = np.abs(upper) * np.exp(1j * transform_phase(np.angle(upper), alpha)) if len(upper) else upper

	poles = np.concatenate((ps.poles[real], new_upper, np.conj(new_upper)))

	return clamp_poles(PoleSet(poles), max_radius)


def anonymize_poles(f, alpha):

	try:
		ps = find_poles(f.coeffs)
	except NonConvergence as e:
		raise FramePassthrough(str(e))

	return shift_poles(ps, alpha)


def anonymize_frame(f, alpha):
	return LpcFrame(poles_to_coeffs(anonymize_poles(f, alpha)), f.gain, f.residual)


def process_frame(frame, alpha, cfg):

	lpc = analyze_frame(frame, cfg.lpc_order)
	ps = anonymize_poles(lpc, alpha)
	synthesized = synthesis_filter(lpc.residual, poles_to_coeffs(ps), poles=ps)

	if cfg.match_energy:
		energy = np.sqrt(np.sum(synthesized ** 2))
		if energy > 0:
			synthesized = synthesized * np.sqrt(np.sum(frame ** 2)) / energy

	return synthesized


def anonymize_utterance(w, cfg, utterance_id, alpha=None, counters=None, clip=True):

	if len(w) == 0:
		raise EmptySignal('utterance {0} is empty'.format(utterance_id))

	if alpha is None:
		alpha = draw_alpha(cfg, utterance_id).alpha

	counters = counters if counters is not None else Counter()
	frames = frame_signal(w, cfg.plan)
	processed = np.empty_like(frames)

	for k, frame in enumerate(frames):

		counters['frames'] += 1

		try:
			processed[k] = process_frame(frame, alpha, cfg)
		except (DegenerateFrame, FramePassthrough, UnstableFilter, ConjugateViolation) as e:
			counters['passthrough'] += 1
			logging.debug('%s frame %d passed through: %s' % (utterance_id, k, e))
			processed[k] = frame

	out = overlap_add(processed, cfg.plan, len(w)).samples

	if clip:
		out = np.clip(out, -1.0, 1.0)

	return Waveform(out, w.sample_rate)

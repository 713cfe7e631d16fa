import math
from dataclasses import dataclass

import numpy as np
from scipy import signal

from src.config import SAMPLE_RATE, FRAME_MS, HOP_MS
from src.errors import EmptySignal, PlanMismatch

from .wavio import Waveform


COLA_TOLERANCE = 1e-6


def sqrt_hann(frame_len):
	# periodic Hann, its square sums to one at 50% overlap
	return np.sqrt(signal.get_window('hann', frame_len, fftbins=True))


@dataclass(frozen=True, eq=False)
class FramePlan:

	frame_len: int
	hop: int
	analysis_window: np.ndarray
	synthesis_window: np.ndarray


	def __post_init__(self):

		if not 0 < self.hop <= self.frame_len:
			raise ValueError('hop must satisfy 0 < hop <= frame_len, got hop={0} frame_len={1}'.format(self.hop, self.frame_len))
		if len(self.analysis_window) != self.frame_len or len(self.synthesis_window) != self.frame_len:
			raise ValueError('window length differs from frame_len {0}'.format(self.frame_len))


	@classmethod
	def default(cls, sample_rate=SAMPLE_RATE, frame_ms=FRAME_MS, hop_ms=HOP_MS):

		frame_len = int(sample_rate * frame_ms // 1000)
		hop = int(sample_rate * hop_ms // 1000)
		window = sqrt_hann(frame_len)

		return cls(frame_len, hop, window, window.copy())


	@classmethod
	def rectangular(cls, frame_len, hop=None):
		hop = hop or frame_len
		return cls(frame_len, hop, np.ones(frame_len), np.ones(frame_len))


	def window_product(self):
		return self.analysis_window * self.synthesis_window


	def overlap_sum(self):
		'''Sum of shifted window products over one hop period.'''

		product = self.window_product()
		total = np.zeros(self.hop)

		for start in range(0, self.frame_len, self.hop):
			chunk = product[start:start + self.hop]
			total[:len(chunk)] += chunk

		return total


	def is_cola(self):

		overlap = self.overlap_sum()
		mean = np.mean(overlap)
		if mean == 0:
			return False

		return bool(np.max(np.abs(overlap - mean)) / mean <= COLA_TOLERANCE)


	def frame_count(self, length):
		return max(1, int(math.ceil(length / float(self.hop))))


def frame_signal(w, plan):

	samples = w.samples if isinstance(w, Waveform) else np.asarray(w, dtype=np.float64)

	if len(samples) == 0:
		raise EmptySignal('cannot frame an empty signal')

	n_frames = plan.frame_count(len(samples))
	padded = np.zeros((n_frames - 1) * plan.hop + plan.frame_len)
	padded[:len(samples)] = samples

	index = np.arange(plan.frame_len)[None, :] + plan.hop * np.arange(n_frames)[:, None]

	return padded[index] * plan.analysis_window[None, :]


def overlap_add(frames, plan, out_len):

	frames = np.asarray(frames, dtype=np.float64)

	if frames.ndim != 2 or frames.shape[1] != plan.frame_len:
		raise PlanMismatch('frames of shape {0} do not match frame_len {1}'.format(frames.shape, plan.frame_len))
	if out_len > (len(frames) - 1) * plan.hop + plan.frame_len or len(frames) == 0:
		raise PlanMismatch('{0} frames cannot cover {1} samples with hop {2}'.format(len(frames), out_len, plan.hop))

	out = np.zeros((len(frames) - 1) * plan.hop + plan.frame_len)

	for k, frame in enumerate(frames):
		start = k * plan.hop
		out[start:start + plan.frame_len] += frame * plan.synthesis_window

	return Waveform(out[:out_len])

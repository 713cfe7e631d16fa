import os
import warnings
import logging
from dataclasses import dataclass

import numpy as np
from scipy.io import wavfile

from src.config import SAMPLE_RATE
from src.errors import NotWav, UnsupportedFormat, TruncatedFile, IoError, MissingFile, NonFinite


PCM_SCALE = 32768.0
PCM_MAX = 1.0 - 2.0 ** -15


@dataclass(frozen=True, eq=False)
class Waveform:
	'''Mono 16 kHz signal, samples in [-1, 1].'''

	samples: np.ndarray
	sample_rate: int = SAMPLE_RATE

	def __post_init__(self):

		samples = np.array(self.samples, dtype=np.float64)
		if samples.ndim != 1:
			raise UnsupportedFormat('waveform must be mono, got shape {0}'.format(samples.shape))
		if not np.all(np.isfinite(samples)):
			raise NonFinite('waveform contains non-finite samples')
		if self.sample_rate != SAMPLE_RATE:
			raise UnsupportedFormat('sample rate {0} Hz, expected {1} Hz'.format(self.sample_rate, SAMPLE_RATE))

		samples.setflags(write=False)
		object.__setattr__(self, 'samples', samples)

	def __len__(self):
		return len(self.samples)

	@property
	def duration(self):
		return len(self.samples) / float(self.sample_rate)


def quantize(samples):
	'''Clamp to [-1, 1 - 2^-15] and round half away from zero to int16.'''

	x = np.clip(np.asarray(samples, dtype=np.float64), -1.0, PCM_MAX) * PCM_SCALE
	pcm = np.sign(x) * np.floor(np.abs(x) + 0.5)

	return np.clip(pcm, -32768, 32767).astype(np.int16)


def read_wav(path):

	if not os.path.exists(path):
		raise MissingFile(path)

	with warnings.catch_warnings(record=True) as caught:
		warnings.simplefilter('always', wavfile.WavFileWarning)

		try:
			rate, data = wavfile.read(path)
		except ValueError as e:
			message = str(e)
			if 'not understood' in message or 'RIFF' in message or 'WAVE' in message:
				raise NotWav('{0}: {1}'.format(path, message))
			if 'Unexpected end' in message or 'EOF' in message or 'size' in message:
				raise TruncatedFile('{0}: {1}'.format(path, message))
			raise UnsupportedFormat('{0}: {1}'.format(path, message))
		except OSError as e:
			raise IoError('{0}: {1}'.format(path, e))

	for w in caught:
		message = str(w.message)
		if 'prematurely' in message or 'EOF' in message:
			raise TruncatedFile('{0}: {1}'.format(path, message))
		logging.debug('%s: %s' % (path, message))

	if data.ndim != 1:
		raise UnsupportedFormat('{0}: {1} channels, expected mono'.format(path, data.shape[1]))
	if data.dtype != np.int16:
		raise UnsupportedFormat('{0}: sample type {1}, expected 16-bit PCM'.format(path, data.dtype))
	if rate != SAMPLE_RATE:
		raise UnsupportedFormat('{0}: {1} Hz, expected {2} Hz'.format(path, rate, SAMPLE_RATE))

	return Waveform(data.astype(np.float64) / PCM_SCALE, rate)


def write_wav(w, path):

	if w.sample_rate != SAMPLE_RATE:
		raise UnsupportedFormat('sample rate {0} Hz, expected {1} Hz'.format(w.sample_rate, SAMPLE_RATE))

	try:
		folder = os.path.dirname(str(path))
		if folder and not os.path.exists(folder):
			os.makedirs(folder)
		wavfile.write(path, w.sample_rate, quantize(w.samples))
	except OSError as e:
		raise IoError('{0}: {1}'.format(path, e))

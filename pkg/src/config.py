import os
import sys
import logging
from dataclasses import dataclass, field


VERSION = '0.3.0'

SAMPLE_RATE = 16000
FRAME_MS = 20
HOP_MS = 10

LPC_ORDER = 20
ALPHA_MIN = 0.5
ALPHA_MAX = 0.9
SEED = 0

MIN_TARGET_EERS = (10.0, 20.0, 30.0, 40.0)


def default_workers():
	return os.cpu_count() or 1


@dataclass
class RunConfig:

	subcommand: str = ''
	data_dir: str = None
	out_dir: str = '.'
	alpha_min: float = ALPHA_MIN
	alpha_max: float = ALPHA_MAX
	lpc_order: int = LPC_ORDER
	seed: int = SEED
	workers: int = field(default_factory=default_workers)
	strict: bool = True
	dataset: str = 'dev'
	extras: dict = field(default_factory=dict)


	@classmethod
	def from_args(cls, args):

		known = {}
		extras = {}

		for key, value in vars(args).items():
			if key in cls.__dataclass_fields__:
				known[key] = value
			else:
				extras[key] = value

		if known.get('workers') is None:
			known['workers'] = default_workers()

		return cls(extras=extras, **known)


	def get(self, key, default=None):
		return self.extras.get(key, default)


	def echo(self):
		return {'version': VERSION,
				'seed': self.seed,
				'alpha_min': self.alpha_min,
				'alpha_max': self.alpha_max,
				'lpc_order': self.lpc_order}


def setup_logging(logfile=None, verbose=False):

	level = logging.DEBUG if verbose else logging.INFO

	if logfile:
		logging.basicConfig(filename=logfile, level=level, format='%(asctime)s %(levelname)s %(message)s')
	else:
		logging.basicConfig(stream=sys.stderr, level=logging.WARNING if not verbose else level)

	logging.debug('Logging to %s' % (logfile or 'stderr'))


def progress(message):
	print(message, file=sys.stderr)

import os
from collections import namedtuple, OrderedDict
from dataclasses import dataclass, field, asdict

import numpy as np
import pandas as pd

from src.config import MIN_TARGET_EERS, VERSION
from src.errors import MalformedLine, MissingFile, IoError, OutOfRange


Condition = namedtuple('Condition', ['index', 'lower', 'upper'])

CONDITIONS = [Condition(i + 1, lower, upper) for i, (lower, upper) in
			  enumerate(zip(MIN_TARGET_EERS, MIN_TARGET_EERS[1:] + (100.0,)))]

ConditionAssignment = namedtuple('ConditionAssignment', ['satisfied', 'interval'])

RESULT_COLUMNS = ['system_id', 'eer_dev', 'eer_eval', 'wer_dev', 'wer_eval', 'uar_dev', 'uar_eval']

DATASET_ORDER = ['dev', 'eval', 'test']
METRIC_ORDER = ['EER', 'WER', 'UAR']


def condition_label(condition):
	# the top condition is closed at 100
	closing = ']' if condition == CONDITIONS[-1] else ')'
	return '[{0:g},{1:g}{2}'.format(condition.lower, condition.upper, closing)


@dataclass(frozen=True)
class SystemResult:

	system_id: str
	eer_dev: float
	eer_eval: float
	wer_dev: float
	wer_eval: float
	uar_dev: float
	uar_eval: float
	team: str = None
	reference: bool = False

	def __post_init__(self):

		for name in ('eer_dev', 'eer_eval', 'uar_dev', 'uar_eval'):
			value = getattr(self, name)
			if not 0.0 <= value <= 100.0:
				raise OutOfRange('{0} of {1} must lie in [0, 100], got {2}'.format(name, self.system_id, value))

		# corpus WER may exceed 100
		for name in ('wer_dev', 'wer_eval'):
			if not 0.0 <= getattr(self, name) < np.inf:
				raise OutOfRange('{0} of {1} must be finite and non-negative'.format(name, self.system_id))


@dataclass
class ConditionRanking:

	condition: Condition
	wer_order: list = field(default_factory=list)
	uar_order: list = field(default_factory=list)
	references: list = field(default_factory=list)

	@property
	def label(self):
		return condition_label(self.condition)

	def wer_rank(self, system_id):
		return self.wer_order.index(system_id) + 1 if system_id in self.wer_order else None

	def uar_rank(self, system_id):
		return self.uar_order.index(system_id) + 1 if system_id in self.uar_order else None


def interval_of(eer):

	for condition in CONDITIONS:
		if condition.lower <= eer < condition.upper:
			return condition

	# the top interval is closed at 100
	if eer == CONDITIONS[-1].upper:
		return CONDITIONS[-1]

	return None


def assign_conditions(s):

	satisfied = frozenset(c.index for c in CONDITIONS if s.eer_eval >= c.lower)

	return ConditionAssignment(satisfied, interval_of(s.eer_eval))


def prune_submissions(members):
	'''Teams with three or more systems keep their lowest-WER and highest-UAR system.'''

	by_team = OrderedDict()
	for s in members:
		by_team.setdefault(s.team if s.team is not None else s.system_id, []).append(s)

	kept = []
	for team, systems in by_team.items():

		if len(systems) < 3:
			kept.extend(systems)
			continue

		best_wer = min(systems, key=lambda s: (s.wer_eval, s.system_id))
		best_uar = min(systems, key=lambda s: (-s.uar_eval, s.system_id))
		kept.extend([best_wer] if best_wer is best_uar else [best_wer, best_uar])

	return kept


def rank_condition(systems, condition, prune=False):

	members = [s for s in systems if not s.reference and interval_of(s.eer_eval) == condition]

	if prune:
		members = prune_submissions(members)

	wer_order = [s.system_id for s in sorted(members, key=lambda s: (s.wer_eval, s.system_id))]
	uar_order = [s.system_id for s in sorted(members, key=lambda s: (-s.uar_eval, s.system_id))]
	references = sorted(s.system_id for s in systems if s.reference)

	return ConditionRanking(condition, wer_order, uar_order, references)


def rank_all(systems, prune=False):
	return [rank_condition(systems, c, prune=prune) for c in CONDITIONS]


def read_results(path):

	if not os.path.exists(path):
		raise MissingFile(path)

	try:
		frame = pd.read_csv(path, sep='\t', dtype={'system_id': str, 'team': str})
	except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
		raise MalformedLine(path, 1, str(e))

	missing = [c for c in RESULT_COLUMNS if c not in frame.columns]
	if missing:
		raise MalformedLine(path, 1, 'missing columns {0}'.format(', '.join(missing)))

	systems = []

	for indx, row in frame.iterrows():

		try:
			values = [float(row[c]) for c in RESULT_COLUMNS[1:]]
			team = row['team'] if 'team' in frame.columns and not pd.isna(row['team']) else None
			reference = bool(int(row['reference'])) if 'reference' in frame.columns and not pd.isna(row['reference']) else False
			systems.append(SystemResult(str(row['system_id']), *values, team=team, reference=reference))
		except (ValueError, OutOfRange) as e:
			raise MalformedLine(path, indx + 2, str(e))

	return systems


def write_results(path, systems):

	frame = pd.DataFrame([asdict(s) for s in systems], columns=RESULT_COLUMNS + ['team', 'reference'])
	frame['reference'] = frame['reference'].astype(int)
	frame.to_csv(path, sep='\t', index=False, float_format='%.2f')


def export_rankings(rankings, systems, path):

	by_id = {s.system_id: s for s in systems}
	rows = []

	for ranking in rankings:
		for order, ids in (('WER', ranking.wer_order), ('UAR', ranking.uar_order)):
			for rank, system_id in enumerate(ids):
				s = by_id[system_id]
				rows.append({'condition': ranking.label, 'order': order, 'rank': rank + 1, 'system_id': system_id,
							 'eer_eval': s.eer_eval, 'wer_eval': s.wer_eval, 'uar_eval': s.uar_eval})
		for system_id in ranking.references:
			s = by_id[system_id]
			rows.append({'condition': ranking.label, 'order': 'REF', 'rank': '', 'system_id': system_id,
						 'eer_eval': s.eer_eval, 'wer_eval': s.wer_eval, 'uar_eval': s.uar_eval})

	frame = pd.DataFrame(rows, columns=['condition', 'order', 'rank', 'system_id', 'eer_eval', 'wer_eval', 'uar_eval'])

	try:
		frame.to_csv(path, sep='\t', index=False, float_format='%.2f')
	except OSError as e:
		raise IoError('{0}: {1}'.format(path, e))

	return frame


def metric_block(key):
	return key.split('_')[0]


def block_order(name, canonical):
	return (canonical.index(name), name) if name in canonical else (len(canonical), name)


def format_value(value):

	if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
		return '%d' % value

	return '%.2f' % value


def emit_results_summary(metrics, path, config=None):
	'''
		metrics maps dataset -> {KEY: value}; keys sharing a prefix before '_'
		(EER, EER_F, EER_M) form one block.
	'''

	config = dict(config or {})
	config.setdefault('version', VERSION)

	lines = ['# results summary']
	lines.append('# ' + ' '.join('{0}={1}'.format(k, config[k]) for k in sorted(config)))

	for dataset in sorted(metrics, key=lambda d: block_order(d, DATASET_ORDER)):

		blocks = OrderedDict()
		for key in sorted(metrics[dataset], key=lambda k: (block_order(metric_block(k), METRIC_ORDER), k != metric_block(k), k)):
			blocks.setdefault(metric_block(key), []).append(key)

		for block, keys in blocks.items():
			lines.append('')
			lines.append('[{0} {1}]'.format(dataset, block))
			for key in keys:
				lines.append('{0}={1}'.format(key, format_value(metrics[dataset][key])))

	try:
		folder = os.path.dirname(str(path))
		if folder and not os.path.exists(folder):
			os.makedirs(folder)
		with open(path, 'w', encoding='utf-8', newline='\n') as write_file:
			write_file.write('\n'.join(lines) + '\n')
	except OSError as e:
		raise IoError('{0}: {1}'.format(path, e))

	return '\n'.join(lines) + '\n'

import os
import glob
from collections import OrderedDict

import pandas as pd

from src.errors import MalformedLine, IoError

from .ranking import format_value


METRIC_SUFFIXES = ('eer', 'wer', 'uar')


def format_metrics(values):
	return ['{0}={1}'.format(key, format_value(value)) for key, value in values.items()]


def metric_path(out_dir, dataset, metric):
	return os.path.join(out_dir, '{0}.{1}'.format(dataset, metric.lower()))


def emit_metrics(values, out_dir=None, dataset=None, metric=None, table=False):
	'''Print KEY=value lines and keep a copy in <out_dir>/<dataset>.<metric>.'''

	lines = format_metrics(values)

	for line in lines:
		print(line)

	if table:
		frame = pd.DataFrame({'metric': list(values.keys()), 'value': [format_value(v) for v in values.values()]})
		print(frame.to_string(index=False))

	if out_dir is None:
		return None

	path = metric_path(out_dir, dataset, metric)

	try:
		if not os.path.exists(out_dir):
			os.makedirs(out_dir)
		with open(path, 'w', encoding='utf-8', newline='\n') as write_file:
			write_file.write('\n'.join(lines) + '\n')
	except OSError as e:
		raise IoError('{0}: {1}'.format(path, e))

	return path


def parse_value(text):
	return float(text) if '.' in text or 'e' in text.lower() else int(text)


def read_metric_file(path):

	values = OrderedDict()

	with open(path, 'r', encoding='utf-8') as data_file:
		for indx, line in enumerate(data_file):

			line = line.strip()
			if not line:
				continue

			key, sep, value = line.partition('=')
			if not sep or not key:
				raise MalformedLine(path, indx + 1, 'expected KEY=value')
			try:
				values[key] = parse_value(value)
			except ValueError:
				raise MalformedLine(path, indx + 1, 'non-numeric value {0}'.format(value))

	return values


def collect_metrics(out_dir):
	'''Gather every <dataset>.<metric> file of a run into dataset -> {KEY: value}.'''

	metrics = OrderedDict()

	for suffix in METRIC_SUFFIXES:
		for path in sorted(glob.glob(os.path.join(out_dir, '*.{0}'.format(suffix)))):
			dataset = os.path.basename(path)[:-len(suffix) - 1]
			metrics.setdefault(dataset, OrderedDict()).update(read_metric_file(path))

	return metrics

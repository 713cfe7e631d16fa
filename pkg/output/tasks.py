import os
import logging
from collections import OrderedDict

from src.config import progress
from src.errors import MissingFile

from .plotter import Plotter
from .ranking import read_results, rank_all, export_rankings, emit_results_summary, condition_label, interval_of
from .report import collect_metrics, format_metrics


class Rank:


	def main(self, cfg):

		progress('!# Begin')

		results = cfg.get('results')
		if not results:
			raise MissingFile('--results is required for rank')

		progress('! Read system results')
		systems = read_results(results)

		progress('! Rank conditions')
		rankings = rank_all(systems, prune=cfg.get('prune', False))

		values = OrderedDict()
		for s in sorted(systems, key=lambda s: s.system_id):
			condition = interval_of(s.eer_eval)
			values['INTERVAL_{0}'.format(s.system_id)] = condition_label(condition) if condition else 'none'

		for ranking in rankings:
			values['WER_ORDER_{0}'.format(ranking.condition.index)] = ','.join(ranking.wer_order)
			values['UAR_ORDER_{0}'.format(ranking.condition.index)] = ','.join(ranking.uar_order)

		for key, value in values.items():
			print('{0}={1}'.format(key, value))

		if not os.path.exists(cfg.out_dir):
			os.makedirs(cfg.out_dir)

		export_rankings(rankings, systems, os.path.join(cfg.out_dir, 'rankings.tsv'))

		if cfg.get('plot'):
			progress('! Plot rankings')
			for metric in ('wer', 'uar'):
				Plotter().plot_rankings(systems, rankings, os.path.join(cfg.out_dir, 'ranking_{0}.pdf'.format(metric)), metric)

		progress('!# End')

		return rankings


class Summarize:


	def main(self, cfg):

		progress('!# Begin')

		progress('! Collect metric files')
		metrics = collect_metrics(cfg.out_dir)
		logging.info('Summarizing %d datasets from %s' % (len(metrics), cfg.out_dir))

		path = cfg.get('summary') or os.path.join(cfg.out_dir, 'results_summary')
		emit_results_summary(metrics, path, cfg.echo())

		for dataset, values in metrics.items():
			for line in format_metrics(values):
				print('{0}.{1}'.format(dataset, line))

		progress('!# End')

		return metrics

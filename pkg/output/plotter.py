import os

import numpy as np
import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
from scipy.stats import norm

from src.config import MIN_TARGET_EERS

from .ranking import CONDITIONS, interval_of


class Plotter:


	METRIC_LABEL = {'wer': 'WER (%)',
					'uar': 'UAR (%)'}

	COLORLIST = ['#1d4484', '#7c0404', '#86a4ca', '#5dddd0', '#874a97', '#424564']


	def prepare_folder(self, path):

		folder = os.path.dirname(str(path))
		if folder and not os.path.exists(folder):
			os.makedirs(folder)


	def plot_rankings(self, systems, rankings, path, metric='wer'):
		'''
			Privacy-utility plane: evaluation EER against WER or UAR.
			Ranked systems carry their rank inside the marker; reference rows are grey.
		'''

		self.prepare_folder(path)

		plt.clf()
		ax = plt.subplot(111)

		ranks = {}
		for ranking in rankings:
			order = ranking.wer_order if metric == 'wer' else ranking.uar_order
			for indx, system_id in enumerate(order):
				ranks[system_id] = indx + 1

		for s in systems:

			x = s.eer_eval
			y = getattr(s, '{0}_eval'.format(metric))

			if s.reference:
				ax.plot(x, y, 'o', color='grey', markersize=9)
				ax.annotate(s.system_id, (x, y), textcoords='offset points', xytext=(6, 6), fontsize=7, color='grey')
				continue

			condition = interval_of(x)
			color = self.COLORLIST[(condition.index if condition else 0) % len(self.COLORLIST)]

			ax.plot(x, y, 'o', color=color, markersize=14, fillstyle='none')
			if s.system_id in ranks:
				ax.annotate(str(ranks[s.system_id]), (x, y), ha='center', va='center', fontsize=7, color=color)
			ax.annotate(s.system_id, (x, y), textcoords='offset points', xytext=(8, -10), fontsize=7)

		for edge in MIN_TARGET_EERS:
			ax.axvline(edge, color='black', linestyle='-.', linewidth=0.6)

		ax.set_xlim(0, max([CONDITIONS[-1].lower + 10] + [s.eer_eval + 5 for s in systems]))
		plt.xlabel('EER (%)')
		plt.ylabel(self.METRIC_LABEL[metric])

		plt.savefig(path, bbox_inches='tight', format='pdf')
		plt.close()


	def plot_det(self, eer_result, path, label=None):
		'''DET curve on normal-deviate axes with the EER point marked.'''

		self.prepare_folder(path)

		p_fa = np.clip([d.p_fa for d in eer_result.det], 1e-4, 1 - 1e-4)
		p_miss = np.clip([d.p_miss for d in eer_result.det], 1e-4, 1 - 1e-4)

		plt.clf()
		ax = plt.subplot(111)

		ax.plot(norm.ppf(p_fa), norm.ppf(p_miss), '-', color=self.COLORLIST[0], label=label or 'DET')

		eer = np.clip(eer_result.eer / 100.0, 1e-4, 1 - 1e-4)
		ax.plot(norm.ppf(eer), norm.ppf(eer), 'o', color=self.COLORLIST[1], label='EER {0:.2f}%'.format(eer_result.eer))

		ticks = [0.001, 0.01, 0.05, 0.2, 0.5, 0.8, 0.95]
		plt.xticks(norm.ppf(ticks), ['{0:g}'.format(100 * t) for t in ticks])
		plt.yticks(norm.ppf(ticks), ['{0:g}'.format(100 * t) for t in ticks])
		plt.xlabel('False alarm rate (%)')
		plt.ylabel('Miss rate (%)')

		ax.legend()

		plt.savefig(path, bbox_inches='tight', format='pdf')
		plt.close()

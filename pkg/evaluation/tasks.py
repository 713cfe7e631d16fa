import os
import logging
import multiprocessing as mp
from collections import OrderedDict

from output.plotter import Plotter
from output.report import emit_metrics
from scenario.datadir import read_utt2spk, read_spk2gender
from src.config import progress
from src.errors import EmptyReference, MissingFile

from .asv import (read_trials, read_embeddings, read_scores, write_scores, score_trials,
				  enrollment_sets, count_trials, SAME_SPEAKER, DIFFERENT_SPEAKER)
from .metrics import (compute_eer, gender_eers, align_wer, corpus_wer, read_transcripts,
					  read_emotions, uar_by_fold, average_uar)


DEFAULT_SCENARIO = 'asv_anon'


def required(cfg, key):

	value = cfg.get(key)
	if not value:
		raise MissingFile('--{0} is required for {1}'.format(key.replace('_', '-'), cfg.subcommand))

	return value


def load_genders(folder):

	if not folder or not os.path.exists(os.path.join(folder, 'spk2gender')):
		return {}

	return read_spk2gender(os.path.join(folder, 'spk2gender'))


def dataset_label(cfg):
	scenario = cfg.get('scenario')
	return '{0}_{1}'.format(cfg.dataset, scenario) if scenario else cfg.dataset


class ScoreAsv:


	def main(self, cfg):

		progress('!# Begin')

		progress('! Read trials and embeddings')
		trials = read_trials(required(cfg, 'trials'))
		enroll_dir = required(cfg, 'enroll_dir')
		utt2spk = read_utt2spk(os.path.join(enroll_dir, 'utt2spk'))
		enroll_vectors = read_embeddings(required(cfg, 'enroll_embeddings'))
		trial_vectors = read_embeddings(required(cfg, 'embeddings'))

		progress('! Score trials')
		records = score_trials(enrollment_sets(utt2spk, enroll_vectors), trials, trial_vectors)

		scenario = cfg.get('scenario') or DEFAULT_SCENARIO
		path = cfg.get('scores') or os.path.join(cfg.out_dir, scenario, 'cosine_out')
		folder = os.path.dirname(path)
		if folder and not os.path.exists(folder):
			os.makedirs(folder)

		write_scores(path, records)
		logging.info('Wrote %d scores to %s' % (len(records), path))

		counts = count_trials(trials, load_genders(enroll_dir))

		values = OrderedDict()
		values['N_TRIALS'] = len(trials)
		values['N_TARGET'] = counts['total'][SAME_SPEAKER]
		values['N_NONTARGET'] = counts['total'][DIFFERENT_SPEAKER]
		for gender in sorted(k for k in counts if k not in ('total', None)):
			values['N_TARGET_{0}'.format(gender)] = counts[gender][SAME_SPEAKER]
			values['N_NONTARGET_{0}'.format(gender)] = counts[gender][DIFFERENT_SPEAKER]

		emit_metrics(values, table=cfg.get('tables', False))

		progress('!# End')

		return records


class Eer:


	def main(self, cfg):

		progress('!# Begin')

		progress('! Read scores')
		trials = read_trials(required(cfg, 'trials'))
		records = read_scores(required(cfg, 'scores'), trials)

		progress('! Compute EER')
		pooled = compute_eer(records)
		genders = load_genders(cfg.get('enroll_dir') or cfg.data_dir)

		values = OrderedDict()

		if genders:
			per_gender = gender_eers(records, genders)
			values['EER'] = per_gender['average']
			for gender in (g for g in per_gender if g != 'average'):
				values['EER_{0}'.format(gender)] = per_gender[gender]
			values['EER_POOLED'] = pooled.eer
		else:
			values['EER'] = pooled.eer

		values['EER_THETA'] = pooled.threshold

		dataset = dataset_label(cfg)
		emit_metrics(values, cfg.out_dir, dataset, 'eer', table=cfg.get('tables', False))

		if cfg.get('plot'):
			progress('! Plot DET')
			Plotter().plot_det(pooled, os.path.join(cfg.out_dir, '{0}_det.pdf'.format(dataset)), label=dataset)

		progress('!# End')

		return values


def align_pair(pair):
	return align_wer(*pair)


class Wer:


	def align(self, pairs, workers=1):

		if workers > 1 and len(pairs) > 1:
			with mp.Pool(workers) as pool:
				return pool.map(align_pair, pairs, chunksize=max(1, len(pairs) // (4 * workers)))

		return [align_pair(p) for p in pairs]


	def main(self, cfg):

		progress('!# Begin')

		progress('! Read transcripts')
		strip = cfg.get('strip_punctuation', False)
		references = read_transcripts(required(cfg, 'ref'), strip_punctuation=strip)
		hypotheses = read_transcripts(required(cfg, 'hyp'), strip_punctuation=strip)

		pairs = []

		for utt in sorted(references):

			if not references[utt]:
				raise EmptyReference('reference of {0} has no tokens'.format(utt))

			if utt not in hypotheses:
				logging.warning('No hypothesis for %s, scored as empty' % utt)

			pairs.append((references[utt], hypotheses.get(utt, [])))

		for utt in sorted(set(hypotheses) - set(references)):
			logging.warning('Hypothesis %s has no reference, ignored' % utt)

		progress('! Align {0} utterances'.format(len(pairs)))
		alignments = self.align(pairs, cfg.workers)

		values = OrderedDict()
		values['WER'] = corpus_wer(alignments)
		values['WER_NSUB'] = sum(a.n_sub for a in alignments)
		values['WER_NDEL'] = sum(a.n_del for a in alignments)
		values['WER_NINS'] = sum(a.n_ins for a in alignments)
		values['WER_NREF'] = sum(a.n_ref for a in alignments)

		emit_metrics(values, cfg.out_dir, cfg.dataset, 'wer', table=cfg.get('tables', False))

		progress('!# End')

		return values


class Uar:


	def main(self, cfg):

		progress('!# Begin')

		progress('! Read emotion records')
		records = read_emotions(required(cfg, 'emotions'))

		progress('! Compute UAR')
		per_fold = uar_by_fold(records, strict=cfg.strict)

		values = OrderedDict()
		values['UAR'] = average_uar(per_fold.values())
		for fold, value in per_fold.items():
			values['UAR_FOLD{0}'.format(fold)] = value

		emit_metrics(values, cfg.out_dir, cfg.dataset, 'uar', table=cfg.get('tables', False))

		progress('!# End')

		return values

import os
import logging
import multiprocessing as mp
from collections import Counter

from audio.wavio import read_wav, write_wav
from scenario.datadir import DataDir, load_data_dir, write_data_dir, write_table
from src.config import progress
from src.errors import VoicePrivacyError, UtteranceFailed, DomainError

from .mcadams import McAdamsConfig, anonymize_utterance, draw_alpha


def anonymize_file(job):
	'''Worker entry point: (utt, source, target, cfg) -> (utt, alpha, counters, failure).'''

	utt, source, target, cfg = job
	counters = Counter()

	try:
		alpha = draw_alpha(cfg, utt).alpha
		w = read_wav(source)
		write_wav(anonymize_utterance(w, cfg, utt, alpha=alpha, counters=counters), target)
	except VoicePrivacyError as e:
		return utt, None, counters, (str(e), e.exit_code)

	return utt, alpha, counters, None


class Anonymizer:


	def config(self, cfg):

		try:
			return McAdamsConfig(alpha_min=cfg.alpha_min, alpha_max=cfg.alpha_max, lpc_order=cfg.lpc_order,
								 master_seed=cfg.seed, match_energy=cfg.get('match_energy', False))
		except ValueError as e:
			raise DomainError(str(e))


	def run(self, data_dir, out_dir, mcadams, workers=1):

		jobs = [(utt, data_dir.wav_index[utt], os.path.join(out_dir, '{0}.wav'.format(utt)), mcadams)
				for utt in data_dir.utterances]

		if workers > 1 and len(jobs) > 1:
			with mp.Pool(workers) as pool:
				results = list(pool.imap(anonymize_file, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
		else:
			results = [anonymize_file(job) for job in jobs]

		alphas = {}
		totals = Counter()

		for utt, alpha, counters, failure in results:

			if failure is not None:
				logging.error('Anonymization of %s failed: %s' % (utt, failure[0]))
				raise UtteranceFailed(utt, failure[0], failure[1])

			alphas[utt] = alpha
			totals.update(counters)

			if counters['passthrough']:
				logging.warning('%s: %d of %d frames passed through unmodified' % (utt, counters['passthrough'], counters['frames']))

		return alphas, totals


	def write_outputs(self, data_dir, out_dir, alphas, echo):

		wav_index = {utt: os.path.join(out_dir, '{0}.wav'.format(utt)) for utt in data_dir.utterances}
		anonymized = DataDir(wav_index, dict(data_dir.utt2spk), dict(data_dir.spk2gender), data_dir.transcripts, out_dir)

		write_data_dir(anonymized, out_dir)

		rows = [['#'] + ['{0}={1}'.format(k, echo[k]) for k in sorted(echo)]]
		rows += [(utt, '%.6f' % alphas[utt]) for utt in sorted(alphas)]
		write_table(os.path.join(out_dir, 'utt2alpha'), rows)

		return anonymized


	def main(self, cfg):

		progress('!# Begin')

		progress('! Load data dir')
		data_dir = load_data_dir(cfg.data_dir)
		mcadams = self.config(cfg)

		if not os.path.exists(cfg.out_dir):
			os.makedirs(cfg.out_dir)

		progress('! Anonymize {0} utterances'.format(len(data_dir.utterances)))
		alphas, totals = self.run(data_dir, cfg.out_dir, mcadams, cfg.workers)

		progress('! Write anonymized data dir')
		self.write_outputs(data_dir, cfg.out_dir, alphas, cfg.echo())

		print('N_UTTERANCES={0}'.format(len(alphas)))
		print('N_FRAMES={0}'.format(totals['frames']))
		print('N_PASSTHROUGH={0}'.format(totals['passthrough']))

		progress('!# End')

		return alphas

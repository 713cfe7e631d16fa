import sys
import logging
import argparse
import warnings

from anonymization.anonymizer import Anonymizer
from evaluation.extractor import ToyExtractor
from evaluation.tasks import ScoreAsv, Eer, Wer, Uar
from output.tasks import Rank, Summarize
from scenario.generator import Generator
from scenario.validator import Validate
from src.config import RunConfig, ALPHA_MIN, ALPHA_MAX, LPC_ORDER, SEED, setup_logging
from src.errors import VoicePrivacyError


'''
	Tasks:
	anonymize: Anonymizer
	McAdams anonymization of every utterance of --data-dir into --out-dir

	extract: ToyExtractor
	LPC envelope embeddings of every utterance of --data-dir

	score_asv: ScoreAsv
	Cosine scores of --trials from enrollment and trial embeddings

	eer / wer / uar: Eer, Wer, Uar
	Privacy and utility metrics, printed as KEY=value and kept in --out-dir

	rank: Rank
	Minimum target EER conditions and WER/UAR rankings of --results

	summarize: Summarize
	Assemble the metric files of --out-dir into results_summary

	generate: Generator
	Write a toy challenge corpus to --out-dir

	validate: Validate
	Check a submission tree for the expected exp/ entries
'''
TASKS = {
		'anonymize': Anonymizer(),
		'extract': ToyExtractor(),
		'score_asv': ScoreAsv(),
		'eer': Eer(),
		'wer': Wer(),
		'uar': Uar(),
		'rank': Rank(),
		'summarize': Summarize(),
		'generate': Generator(),
		'validate': Validate()
}


class Ring:

	def main(self, args):

		setup_logging(args.logfile, args.verbose)
		cfg = RunConfig.from_args(args)

		logging.debug('Initiated with args: %s' % args)
		print('!### Task: {0}'.format(cfg.subcommand), file=sys.stderr)

		try:
			TASKS[cfg.subcommand].main(cfg)
		except VoicePrivacyError as e:
			logging.error('%s: %s' % (type(e).__name__, e))
			print('error: {0}: {1}'.format(type(e).__name__, e), file=sys.stderr)
			return e.exit_code
		except Exception:
			logging.exception('Something bad happened')
			return 1

		return 0


def build_parser():

	parser = argparse.ArgumentParser(description='Voice anonymization and evaluation toolkit')
	parser.add_argument('subcommand', choices=sorted(TASKS), help='Task to run')
	parser.add_argument('--seed', type=int, default=SEED, help='Master seed of the per-utterance alpha draw')
	parser.add_argument('--alpha-min', dest='alpha_min', type=float, default=ALPHA_MIN, help='Lower bound of the McAdams coefficient')
	parser.add_argument('--alpha-max', dest='alpha_max', type=float, default=ALPHA_MAX, help='Upper bound of the McAdams coefficient')
	parser.add_argument('--lpc-order', dest='lpc_order', type=int, default=LPC_ORDER, help='LPC order')
	parser.add_argument('--workers', type=int, default=None, help='Worker processes [default: cpu count]')
	parser.add_argument('--strict', dest='strict', action='store_true', default=True, help='Reject folds missing an emotion class')
	parser.add_argument('--lenient', dest='strict', action='store_false', help='Exclude missing emotion classes with a warning')
	parser.add_argument('--data-dir', dest='data_dir', help='Kaldi-style data directory')
	parser.add_argument('--out-dir', dest='out_dir', default='.', help='Output root')
	parser.add_argument('--dataset', default='dev', help='Dataset label of metric files')
	parser.add_argument('--scores', help='Score file')
	parser.add_argument('--trials', help='Trial list')
	parser.add_argument('--enroll-dir', dest='enroll_dir', help='Enrollment data directory (utt2spk, spk2gender)')
	parser.add_argument('--enroll-embeddings', dest='enroll_embeddings', help='Enrollment embeddings')
	parser.add_argument('--embeddings', help='Trial embeddings (written by extract)')
	parser.add_argument('--scenario', help='Attack scenario label, e.g. asv_orig or asv_anon')
	parser.add_argument('--ref', help='Reference transcripts')
	parser.add_argument('--hyp', help='Hypothesis transcripts')
	parser.add_argument('--strip-punctuation', dest='strip_punctuation', action='store_true', help='Drop punctuation before WER')
	parser.add_argument('--emotions', help='Emotion records')
	parser.add_argument('--results', help='System results table')
	parser.add_argument('--summary', help='Results summary path [default: <out-dir>/results_summary]')
	parser.add_argument('--prune', action='store_true', help='Keep the lowest-WER and highest-UAR system per team')
	parser.add_argument('--match-energy', dest='match_energy', action='store_true', help='Match frame energy after resynthesis')
	parser.add_argument('--speakers', type=int, help='Speakers of the toy corpus')
	parser.add_argument('--plot', action='store_true', help='Save DET and ranking plots')
	parser.add_argument('--tables', action='store_true', help='Print human-readable tables')
	parser.add_argument('--logfile', help='Log messages to logfile')
	parser.add_argument('--verbose', action='store_true', help='Debug logging')

	return parser


def main(argv=None):

	warnings.simplefilter('ignore')

	args = build_parser().parse_args(argv)

	return Ring().main(args)


if __name__ == '__main__':
	sys.exit(main())

import logging
from collections import namedtuple, OrderedDict
from dataclasses import dataclass

import numpy as np
import pandas as pd
from sklearn.metrics import roc_curve, confusion_matrix

from scenario.datadir import read_table
from src.errors import MissingClass, EmptyReference, MissingReferenceClass, WrongFoldCount, MalformedLine


EMOTIONS = ('neutral', 'sadness', 'anger', 'happiness')

EMOTION_ALIASES = {'neu': 'neutral', 'sad': 'sadness', 'ang': 'anger', 'hap': 'happiness'}

N_FOLDS = 5


DetPoint = namedtuple('DetPoint', ['threshold', 'p_fa', 'p_miss'])

EerResult = namedtuple('EerResult', ['eer', 'threshold', 'det'])


@dataclass(frozen=True)
class WerCounts:

	n_sub: int
	n_del: int
	n_ins: int
	n_ref: int

	@property
	def errors(self):
		return self.n_sub + self.n_del + self.n_ins

	@property
	def wer(self):
		return 100.0 * self.errors / self.n_ref


@dataclass(frozen=True)
class EmotionRecord:

	utterance_id: str
	reference: str
	predicted: str
	fold: int


# EER

def det_points(scores, labels):
	'''Rates at every distinct score threshold, accepting score >= threshold, ascending.'''

	fpr, tpr, thresholds = roc_curve(labels, scores, pos_label=1, drop_intermediate=False)

	return thresholds[::-1], fpr[::-1], 1.0 - tpr[::-1]


def eer_from_arrays(scores, labels):

	scores = np.asarray(scores, dtype=np.float64)
	labels = np.asarray(labels).astype(int)

	if not np.any(labels == 1) or not np.any(labels == 0):
		raise MissingClass('EER needs at least one same-speaker and one different-speaker score')

	thresholds, p_fa, p_miss = det_points(scores, labels)
	det = [DetPoint(float(t), float(fa), float(miss)) for t, fa, miss in zip(thresholds, p_fa, p_miss)]

	diff = p_miss - p_fa
	k = int(np.argmax(diff >= 0.0))

	if diff[k] == 0.0:
		return EerResult(100.0 * p_fa[k], float(thresholds[k]), det)

	# diff[0] is -1 at the lowest threshold, so k >= 1 here
	t = -diff[k - 1] / (diff[k] - diff[k - 1])
	eer = p_fa[k - 1] + t * (p_fa[k] - p_fa[k - 1])

	if np.isfinite(thresholds[k]):
		theta = thresholds[k - 1] + t * (thresholds[k] - thresholds[k - 1])
	else:
		theta = thresholds[k - 1]

	return EerResult(100.0 * eer, float(theta), det)


def compute_eer(scores):
	return eer_from_arrays([r.score for r in scores], [1 if r.pair.is_target else 0 for r in scores])


def gender_eers(scores, spk2gender):
	'''EER per enrollment gender and their unweighted mean.'''

	results = OrderedDict()

	for gender in sorted(set(spk2gender.get(r.pair.enroll_speaker) for r in scores) - set([None])):
		subset = [r for r in scores if spk2gender.get(r.pair.enroll_speaker) == gender]
		results[gender] = compute_eer(subset).eer

	if results:
		results['average'] = float(np.mean(list(results.values())))

	return results


# WER

def normalize_text(text, uppercase=True, strip_punctuation=False):

	tokens = text if isinstance(text, (list, tuple)) else text.split()

	if strip_punctuation:
		tokens = [''.join(c for c in tok if c.isalnum() or c == "'") for tok in tokens]
		tokens = [tok for tok in tokens if tok]
	if uppercase:
		tokens = [tok.upper() for tok in tokens]

	return list(tokens)


def align_wer(ref, hyp):
	'''
		Unit-cost edit alignment. Ties on backtrace prefer
		substitution (or match), then deletion, then insertion.
	'''

	ref, hyp = list(ref), list(hyp)
	n, m = len(ref), len(hyp)

	if n == 0:
		raise EmptyReference('reference has no tokens')

	cost = [[0] * (m + 1) for _ in range(n + 1)]
	for i in range(n + 1):
		cost[i][0] = i
	for j in range(m + 1):
		cost[0][j] = j

	for i in range(1, n + 1):
		for j in range(1, m + 1):
			diagonal = cost[i - 1][j - 1] + (0 if ref[i - 1] == hyp[j - 1] else 1)
			cost[i][j] = min(diagonal, cost[i - 1][j] + 1, cost[i][j - 1] + 1)

	n_sub = n_del = n_ins = 0
	i, j = n, m

	while i > 0 or j > 0:

		if i > 0 and j > 0:
			mismatch = 0 if ref[i - 1] == hyp[j - 1] else 1
			if cost[i][j] == cost[i - 1][j - 1] + mismatch:
				n_sub += mismatch
				i, j = i - 1, j - 1
				continue

		if i > 0 and cost[i][j] == cost[i - 1][j] + 1:
			n_del += 1
			i -= 1
		else:
			n_ins += 1
			j -= 1

	return WerCounts(n_sub, n_del, n_ins, n)


def corpus_wer(alignments):
	'''Error mass over reference mass, not the mean of per-utterance WERs.'''

	alignments = list(alignments)

	if not alignments:
		raise EmptyReference('corpus WER needs at least one utterance')

	return 100.0 * sum(a.errors for a in alignments) / sum(a.n_ref for a in alignments)


# UAR

def canonical_emotion(label):
	label = label.lower()
	return EMOTION_ALIASES.get(label, label)


def fold_uar(records, strict=True):

	records = list(records)
	references = [r.reference for r in records]
	predictions = [r.predicted for r in records]
	fold = records[0].fold if records else None

	matrix = confusion_matrix(references, predictions, labels=list(EMOTIONS)) if records else np.zeros((len(EMOTIONS),) * 2)
	support = matrix.sum(axis=1)

	recalls = []
	for indx, emotion in enumerate(EMOTIONS):

		if support[indx] == 0:
			if strict:
				raise MissingReferenceClass(emotion, fold)
			logging.warning('Fold %s has no %s reference, class excluded from UAR' % (fold, emotion))
			continue

		recalls.append(matrix[indx, indx] / float(support[indx]))

	if not recalls:
		raise MissingReferenceClass(EMOTIONS[0], fold)

	return 100.0 * sum(recalls) / len(recalls)


def uar_by_fold(records, strict=True):

	frame = pd.DataFrame([vars(r) for r in records], columns=['utterance_id', 'reference', 'predicted', 'fold'])
	per_fold = OrderedDict()

	for fold, group in frame.groupby('fold', sort=True):
		per_fold[int(fold)] = fold_uar([EmotionRecord(*row) for row in group.itertuples(index=False)], strict=strict)

	return per_fold


def average_uar(fold_uars):

	fold_uars = list(fold_uars)

	if len(fold_uars) != N_FOLDS:
		raise WrongFoldCount('UAR is averaged over {0} folds, got {1}'.format(N_FOLDS, len(fold_uars)))

	return float(np.mean(fold_uars))


# Readers

def read_transcripts(path, uppercase=True, strip_punctuation=False):
	return OrderedDict((fields[0], normalize_text(fields[1:], uppercase, strip_punctuation)) for _, fields in read_table(path, 'text'))


def read_emotions(path):

	records = []

	for line_no, (utt, fold, reference, predicted) in read_table(path, 'emotions'):

		try:
			fold = int(fold)
		except ValueError:
			raise MalformedLine(path, line_no, 'fold must be an integer')
		if not 1 <= fold <= N_FOLDS:
			raise MalformedLine(path, line_no, 'fold must be in 1..{0}'.format(N_FOLDS))

		reference, predicted = canonical_emotion(reference), canonical_emotion(predicted)
		for label in (reference, predicted):
			if label not in EMOTIONS:
				raise MalformedLine(path, line_no, 'unknown emotion class {0}'.format(label))

		records.append(EmotionRecord(utt, reference, predicted, fold))

	return records

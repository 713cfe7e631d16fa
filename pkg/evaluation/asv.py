import os
import logging
from collections import OrderedDict, Counter
from dataclasses import dataclass

import numpy as np

from scenario.datadir import read_table, write_table
from src.errors import (MalformedLine, EmptyEnrollment, DimensionMismatch, ZeroNorm, ZeroNormResult,
						MissingEnrollment, MissingTrialVector, MissingFile, IoError, NonFinite)


SAME_SPEAKER = 'same_speaker'
DIFFERENT_SPEAKER = 'different_speaker'

TRIAL_LABELS = {'target': SAME_SPEAKER, 'nontarget': DIFFERENT_SPEAKER}
TRIAL_NAMES = {SAME_SPEAKER: 'target', DIFFERENT_SPEAKER: 'nontarget'}


@dataclass(frozen=True, eq=False)
class Embedding:

	utterance_id: str
	vector: np.ndarray

	def __post_init__(self):

		vector = np.array(self.vector, dtype=np.float64)
		if vector.ndim != 1 or len(vector) == 0:
			raise DimensionMismatch('embedding {0} must be a non-empty vector'.format(self.utterance_id))
		if not np.all(np.isfinite(vector)):
			raise NonFinite('embedding {0} has non-finite components'.format(self.utterance_id))
		if not np.any(vector):
			raise ZeroNorm('embedding {0} has zero norm'.format(self.utterance_id))

		vector.setflags(write=False)
		object.__setattr__(self, 'vector', vector)

	@property
	def dim(self):
		return len(self.vector)


@dataclass(frozen=True)
class TrialPair:

	enroll_speaker: str
	trial_utterance: str
	label: str

	@property
	def is_target(self):
		return self.label == SAME_SPEAKER


@dataclass(frozen=True)
class ScoreRecord:

	pair: TrialPair
	score: float


def as_vector(v):
	return v.vector if isinstance(v, Embedding) else np.asarray(v, dtype=np.float64)


def check_dimensions(vectors):

	dims = set(len(v) for v in vectors)
	if len(dims) > 1:
		raise DimensionMismatch('embeddings of dimensions {0} in one scoring run'.format(sorted(dims)))


def average_enrollment(vectors):

	vectors = [as_vector(v) for v in vectors]

	if len(vectors) == 0:
		raise EmptyEnrollment('enrollment needs at least one vector')

	check_dimensions(vectors)

	mean = np.mean(np.vstack(vectors), axis=0)
	if not np.any(mean):
		raise ZeroNormResult('averaged enrollment vector has zero norm')

	return mean


def cosine_score(e, t):

	e, t = as_vector(e), as_vector(t)

	if len(e) != len(t):
		raise DimensionMismatch('cannot score dimension {0} against {1}'.format(len(e), len(t)))

	norm = np.linalg.norm(e) * np.linalg.norm(t)
	if norm == 0:
		raise ZeroNorm('cosine score of a zero vector')

	return float(np.clip(np.dot(e, t) / norm, -1.0, 1.0))


def score_trials(enrollments, trials, trial_vectors):

	models = {}
	records = []

	for pair in trials:

		if pair.enroll_speaker not in models:
			if pair.enroll_speaker not in enrollments or len(enrollments[pair.enroll_speaker]) == 0:
				raise MissingEnrollment(pair.enroll_speaker)
			models[pair.enroll_speaker] = average_enrollment(enrollments[pair.enroll_speaker])

		if pair.trial_utterance not in trial_vectors:
			raise MissingTrialVector(pair.trial_utterance)

		records.append(ScoreRecord(pair, cosine_score(models[pair.enroll_speaker], trial_vectors[pair.trial_utterance])))

	return records


def enrollment_sets(utt2spk, embeddings):
	'''Group enrollment embeddings by speaker, utterances in sorted order.'''

	sets = OrderedDict()

	for utt in sorted(utt2spk):
		if utt not in embeddings:
			logging.warning('Enrollment utterance %s has no embedding, skipped' % utt)
			continue
		sets.setdefault(utt2spk[utt], []).append(embeddings[utt])

	return sets


def read_embeddings(path):

	if not os.path.exists(path):
		raise MissingFile(path)

	embeddings = OrderedDict()

	if str(path).endswith('.npz'):

		try:
			with np.load(path, allow_pickle=False) as archive:
				ids = [str(x) for x in archive['ids']]
				vectors = archive['vectors']
		except (KeyError, ValueError, OSError) as e:
			raise IoError('{0}: {1}'.format(path, e))

		if len(ids) != len(vectors):
			raise DimensionMismatch('{0}: {1} ids for {2} vectors'.format(path, len(ids), len(vectors)))

		for utt, vector in zip(ids, vectors):
			embeddings[utt] = Embedding(utt, vector)

	else:

		for line_no, fields in read_table(path, 'embeddings'):
			try:
				vector = [float(x) for x in fields[1:]]
			except ValueError:
				raise MalformedLine(path, line_no, 'non-numeric embedding component')
			if not np.all(np.isfinite(vector)):
				raise MalformedLine(path, line_no, 'non-finite embedding component')
			try:
				embeddings[fields[0]] = Embedding(fields[0], vector)
			except ZeroNorm:
				raise ZeroNorm('{0}:{1}: embedding {2} has zero norm'.format(path, line_no, fields[0]))

	check_dimensions([e.vector for e in embeddings.values()])

	return embeddings


def write_embeddings(path, embeddings):

	items = sorted(embeddings.items())

	if str(path).endswith('.npz'):
		np.savez(path, ids=np.array([k for k, _ in items]), vectors=np.vstack([e.vector for _, e in items]))
	else:
		write_table(path, [[k] + ['%.8g' % x for x in e.vector] for k, e in items])


def read_trials(path):

	trials = []
	seen = set()

	for line_no, (enroll, trial, label) in read_table(path, 'trials'):

		if label not in TRIAL_LABELS:
			raise MalformedLine(path, line_no, 'label must be target or nontarget, got {0}'.format(label))
		if (enroll, trial) in seen:
			raise MalformedLine(path, line_no, 'duplicate trial pair {0} {1}'.format(enroll, trial))

		seen.add((enroll, trial))
		trials.append(TrialPair(enroll, trial, TRIAL_LABELS[label]))

	return trials


def write_trials(path, trials):
	write_table(path, [(t.enroll_speaker, t.trial_utterance, TRIAL_NAMES[t.label]) for t in trials])


def count_trials(trials, spk2gender=None):
	'''Same/different pair counts, overall and per enrollment gender.'''

	counts = {'total': Counter()}

	for pair in trials:

		counts['total'][pair.label] += 1

		if spk2gender:
			gender = spk2gender.get(pair.enroll_speaker)
			counts.setdefault(gender, Counter())[pair.label] += 1

	return counts


def write_scores(path, records):
	write_table(path, [(r.pair.enroll_speaker, r.pair.trial_utterance, '%.6f' % r.score) for r in records])


def read_scores(path, trials):
	'''Attach trial labels to a score file; every scored pair must be in the trial list.'''

	labels = {(t.enroll_speaker, t.trial_utterance): t for t in trials}
	records = []

	for line_no, (enroll, trial, score) in read_table(path, 'scores'):

		if (enroll, trial) not in labels:
			raise MalformedLine(path, line_no, 'pair {0} {1} is not in the trial list'.format(enroll, trial))
		try:
			value = float(score)
		except ValueError:
			raise MalformedLine(path, line_no, 'non-numeric score')
		if not np.isfinite(value):
			raise MalformedLine(path, line_no, 'non-finite score')

		records.append(ScoreRecord(labels[(enroll, trial)], value))

	return records

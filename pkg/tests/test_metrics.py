import logging

import numpy as np
import pytest

from evaluation.asv import TrialPair, ScoreRecord, SAME_SPEAKER, DIFFERENT_SPEAKER
from evaluation.metrics import (EMOTIONS, EmotionRecord, WerCounts, eer_from_arrays, compute_eer, gender_eers,
								align_wer, corpus_wer, normalize_text, fold_uar, uar_by_fold, average_uar,
								read_emotions, read_transcripts)
from src.errors import MissingClass, EmptyReference, MissingReferenceClass, WrongFoldCount, MalformedLine


def sweep_eer(scores, labels):
	'''Midpoint threshold sweep with linear interpolation at the crossing.'''

	scores = np.asarray(scores, dtype=np.float64)
	labels = np.asarray(labels)
	values = np.unique(scores)

	thresholds = np.concatenate(([values[0] - 1.0], (values[:-1] + values[1:]) / 2.0, [values[-1] + 1.0]))
	target, nontarget = scores[labels == 1], scores[labels == 0]

	p_fa = np.array([np.mean(nontarget >= t) for t in thresholds])
	p_miss = np.array([np.mean(target < t) for t in thresholds])

	for k in range(len(thresholds)):
		d = p_miss[k] - p_fa[k]
		if d == 0:
			return 100.0 * p_fa[k]
		if d > 0:
			d_prev = p_miss[k - 1] - p_fa[k - 1]
			t = d_prev / (d_prev - d)
			return 100.0 * (p_fa[k - 1] + t * (p_fa[k] - p_fa[k - 1]))


def edit_distance(a, b):

	previous = list(range(len(b) + 1))
	for i in range(1, len(a) + 1):
		current = [i] + [0] * len(b)
		for j in range(1, len(b) + 1):
			current[j] = min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (a[i - 1] != b[j - 1]))
		previous = current

	return previous[-1]


def records(scores, labels, speakers=None):

	speakers = speakers or ['spk'] * len(scores)
	return [ScoreRecord(TrialPair(spk, 'u{0}'.format(k), SAME_SPEAKER if lab else DIFFERENT_SPEAKER), s)
			for k, (s, lab, spk) in enumerate(zip(scores, labels, speakers))]


def random_fold(rng, fold=1, size=40):

	references = list(EMOTIONS) + list(rng.choice(EMOTIONS, size=size - len(EMOTIONS)))
	return [EmotionRecord('u{0}'.format(k), ref, str(rng.choice(EMOTIONS)) if rng.random() < 0.5 else ref, fold)
			for k, ref in enumerate(references)]


class TestEer:

	def test_perfect_separation(self):
		result = compute_eer(records([0.9, 0.8, 0.2, 0.1], [1, 1, 0, 0]))

		assert result.eer == 0.0

	def test_identical_scores(self):
		assert eer_from_arrays([0.5] * 6, [1, 0, 1, 0, 1, 0]).eer == pytest.approx(50.0)

	def test_matches_threshold_sweep(self):
		rng = np.random.default_rng(2024)

		for _ in range(10000):
			n = int(rng.integers(4, 401))
			labels = rng.integers(0, 2, size=n)
			labels[:2] = [0, 1]
			if rng.random() < 0.5:
				scores = rng.integers(0, 12, size=n) / 12.0
			else:
				scores = rng.standard_normal(n) + labels * rng.uniform(0, 3)

			assert abs(eer_from_arrays(scores, labels).eer - sweep_eer(scores, labels)) < 1e-9

	def test_det_monotone_and_bounded(self):
		rng = np.random.default_rng(6)
		labels = rng.integers(0, 2, size=300)
		labels[:2] = [0, 1]

		result = eer_from_arrays(rng.standard_normal(300) + labels, labels)
		p_fa = np.array([d.p_fa for d in result.det])
		p_miss = np.array([d.p_miss for d in result.det])

		assert np.all(np.diff(p_fa) <= 0)
		assert np.all(np.diff(p_miss) >= 0)
		assert 0.0 <= result.eer <= 100.0

	def test_label_swap_duality(self):
		rng = np.random.default_rng(12)

		for _ in range(200):
			labels = rng.integers(0, 2, size=50)
			labels[:2] = [0, 1]
			scores = rng.standard_normal(50)

			assert eer_from_arrays(-scores, 1 - labels).eer == pytest.approx(eer_from_arrays(scores, labels).eer, abs=1e-9)

	def test_missing_class(self):
		with pytest.raises(MissingClass):
			eer_from_arrays([0.1, 0.2], [1, 1])

	def test_gender_average(self):
		scores = [0.9, 0.1, 0.4, 0.6, 0.8, 0.2]
		labels = [1, 0, 1, 0, 1, 0]
		speakers = ['f1', 'f1', 'f1', 'f1', 'm1', 'm1']

		per_gender = gender_eers(records(scores, labels, speakers), {'f1': 'F', 'm1': 'M'})

		assert per_gender['F'] == pytest.approx(50.0)
		assert per_gender['M'] == 0.0
		assert per_gender['average'] == pytest.approx(25.0)


class TestWer:

	def test_identical(self):
		assert align_wer('a b c'.split(), 'a b c'.split()) == WerCounts(0, 0, 0, 3)

	def test_empty_hypothesis(self):
		counts = align_wer('a b c'.split(), [])

		assert counts == WerCounts(0, 3, 0, 3)
		assert counts.wer == 100.0

	def test_substitution_and_insertion(self):
		counts = align_wer('the cat sat'.split(), 'the bat sat down'.split())

		assert counts == WerCounts(1, 0, 1, 3)
		assert counts.wer == pytest.approx(66.67, abs=0.01)

	def test_empty_reference(self):
		with pytest.raises(EmptyReference):
			align_wer([], ['a'])

	def test_matches_edit_distance(self):
		rng = np.random.default_rng(31)
		vocabulary = list('abcdefghij')

		for _ in range(10000):
			ref = list(rng.choice(vocabulary, size=int(rng.integers(1, 31))))
			hyp = list(rng.choice(vocabulary[:int(rng.integers(1, 11))], size=int(rng.integers(0, 31))))

			counts = align_wer(ref, hyp)

			assert counts.errors == edit_distance(ref, hyp)
			assert counts.n_ins - counts.n_del == len(hyp) - len(ref)
			assert counts.n_del <= counts.n_ref == len(ref)

	def test_swap_exchanges_deletions_and_insertions(self):
		rng = np.random.default_rng(32)

		for _ in range(200):
			a = list(rng.choice(list('abcd'), size=int(rng.integers(1, 15))))
			b = list(rng.choice(list('abcd'), size=int(rng.integers(1, 15))))

			assert align_wer(a, b).errors == align_wer(b, a).errors

	def test_corpus_aggregation(self):
		u1 = WerCounts(1, 0, 0, 1)
		u2 = WerCounts(0, 0, 0, 9)

		assert corpus_wer([u1, u2]) == pytest.approx(10.0)
		assert corpus_wer([WerCounts(0, 0, 0, 3), WerCounts(0, 0, 0, 5)]) == 0.0

	def test_corpus_may_exceed_hundred(self):
		assert corpus_wer([align_wer(['a'], ['b', 'c', 'd'])]) == 300.0

	def test_normalization(self):
		assert normalize_text('hello,  World') == ['HELLO,', 'WORLD']
		assert normalize_text('hello,  World', strip_punctuation=True) == ['HELLO', 'WORLD']

	def test_read_transcripts(self, tmp_path):
		path = tmp_path / 'text'
		path.write_text('u1 the cat\r\nu2 sat\n')

		assert read_transcripts(path) == {'u1': ['THE', 'CAT'], 'u2': ['SAT']}


class TestUar:

	def test_perfect(self):
		fold = [EmotionRecord('u{0}'.format(k), e, e, 1) for k, e in enumerate(EMOTIONS)]

		assert fold_uar(fold) == 100.0

	def test_constant_predictor(self):
		fold = [EmotionRecord('u{0}'.format(k), e, 'neutral', 1) for k, e in enumerate(EMOTIONS * 3)]

		assert fold_uar(fold) == pytest.approx(25.0)

	def test_matches_recall_oracle(self):
		rng = np.random.default_rng(41)

		for _ in range(1000):
			fold = random_fold(rng, size=int(rng.integers(4, 80)))
			recalls = []
			for emotion in EMOTIONS:
				members = [r for r in fold if r.reference == emotion]
				recalls.append(sum(r.predicted == emotion for r in members) / len(members))

			assert fold_uar(fold) == pytest.approx(100.0 * np.mean(recalls), abs=1e-9)

	def test_class_imbalance_invariance(self):
		rng = np.random.default_rng(42)
		fold = random_fold(rng)
		duplicated = fold + [r for r in fold if r.reference == 'anger'] * 3

		assert fold_uar(duplicated) == pytest.approx(fold_uar(fold), abs=1e-12)

	def test_missing_class_strict(self):
		fold = [EmotionRecord('u1', 'neutral', 'neutral', 2), EmotionRecord('u2', 'anger', 'anger', 2)]

		with pytest.raises(MissingReferenceClass) as info:
			fold_uar(fold)

		assert info.value.fold == 2

	def test_missing_class_lenient(self, caplog):
		fold = [EmotionRecord('u1', 'neutral', 'neutral', 2), EmotionRecord('u2', 'anger', 'sadness', 2)]

		with caplog.at_level(logging.WARNING):
			value = fold_uar(fold, strict=False)

		assert value == pytest.approx(50.0)
		assert 'sadness' in caplog.text

	def test_average(self):
		assert average_uar([60.0] * 5) == 60.0
		assert average_uar([40.0, 50.0, 60.0, 70.0, 80.0]) == pytest.approx(60.0)

	def test_average_matches_mean(self):
		rng = np.random.default_rng(43)
		values = rng.uniform(0, 100, size=5)

		assert abs(average_uar(values) - np.mean(values)) < 1e-12

	def test_wrong_fold_count(self):
		with pytest.raises(WrongFoldCount):
			average_uar([50.0] * 4)

	def test_by_fold(self):
		rng = np.random.default_rng(44)
		folds = [r for k in range(1, 6) for r in random_fold(rng, fold=k)]

		per_fold = uar_by_fold(folds)

		assert list(per_fold) == [1, 2, 3, 4, 5]
		assert per_fold[3] == pytest.approx(fold_uar([r for r in folds if r.fold == 3]))

	def test_read_emotions(self, tmp_path):
		path = tmp_path / 'emotions'
		path.write_text('u1 1 neu hap\nu2 5 Anger anger\n')

		assert read_emotions(path) == [EmotionRecord('u1', 'neutral', 'happiness', 1), EmotionRecord('u2', 'anger', 'anger', 5)]

	@pytest.mark.parametrize('line', ['u1 6 neutral neutral', 'u1 x neutral neutral', 'u1 1 neutral bored', 'u1 1 neutral'])
	def test_read_emotions_rejects(self, tmp_path, line):
		path = tmp_path / 'emotions'
		path.write_text(line + '\n')

		with pytest.raises(MalformedLine):
			read_emotions(path)

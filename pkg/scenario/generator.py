'''
	Toy challenge corpus: speakers are sets of resonances excited by a pulse
	train, so that moving pole phases moves their identity.

	<root>/wav/<utt>.wav
	<root>/enrolls/   wav.scp utt2spk spk2gender text
	<root>/trials_dir/ wav.scp utt2spk spk2gender text
	<root>/trials     enrollment speaker x trial utterance, same gender only
	<root>/hyp        hypothesis transcripts of the trial utterances
	<root>/emotions   5-fold emotion records
'''

import os
from collections import namedtuple

import numpy as np
from scipy import signal

from audio.wavio import Waveform, write_wav
from evaluation.asv import TrialPair, write_trials, SAME_SPEAKER, DIFFERENT_SPEAKER
from evaluation.metrics import EMOTIONS, N_FOLDS
from src.config import SAMPLE_RATE, SEED, progress

from .datadir import DataDir, GENDERS, write_data_dir, write_table


VOCABULARY = ['THE', 'A', 'OF', 'AND', 'TO', 'IN', 'HE', 'SHE', 'WAS', 'THAT',
			  'HIS', 'HER', 'WITH', 'FOR', 'HAD', 'IT', 'YOU', 'NOT', 'BE', 'ON']

# pole phase ranges (rad) of the three toy formants
FORMANT_RANGES = [(0.30, 0.55), (0.80, 1.30), (1.60, 2.40)]

PITCH = {'F': (180.0, 240.0), 'M': (100.0, 140.0)}

ToyCorpus = namedtuple('ToyCorpus', ['root', 'enrolls', 'trials_dir', 'trials', 'hyp', 'emotions', 'n_utterances', 'n_trials'])

SpeakerProfile = namedtuple('SpeakerProfile', ['speaker_id', 'gender', 'phases', 'radii', 'pitch'])


class Generator:


	def __init__(self, n_speakers=20, enroll_per_speaker=3, trials_per_speaker=4, duration=1.0,
				 emotions_per_class=10, seed=SEED):

		self.n_speakers = n_speakers
		self.enroll_per_speaker = enroll_per_speaker
		self.trials_per_speaker = trials_per_speaker
		self.duration = duration
		self.emotions_per_class = emotions_per_class
		self.seed = seed


	def speakers(self):

		rng = np.random.default_rng([self.seed, 1])
		profiles = []

		for indx in range(self.n_speakers):

			gender = GENDERS[indx % 2]
			number = indx // 2 + 1
			phases = np.array([rng.uniform(lo, hi) for lo, hi in FORMANT_RANGES])
			radii = rng.uniform(0.93, 0.97, size=len(phases))
			pitch = rng.uniform(*PITCH[gender])

			profiles.append(SpeakerProfile('{0}{1:02d}'.format(gender.lower(), number), gender, phases, radii, pitch))

		return profiles


	def synthesize(self, profile, rng):

		n = int(round(self.duration * SAMPLE_RATE))
		period = SAMPLE_RATE / (profile.pitch * rng.uniform(0.97, 1.03))

		excitation = np.zeros(n)
		excitation[np.round(np.arange(0, n, period)).astype(int) % n] = 1.0
		excitation += 0.01 * rng.standard_normal(n)

		phases = profile.phases + rng.uniform(-0.02, 0.02, size=len(profile.phases))
		poles = profile.radii * np.exp(1j * phases)
		denominator = np.real(np.poly(np.concatenate((poles, np.conj(poles)))))

		x = signal.lfilter([1.0], denominator, excitation)

		return Waveform(0.5 * x / np.max(np.abs(x)))


	def sentence(self, rng):
		return list(rng.choice(VOCABULARY, size=int(rng.integers(4, 9))))


	def recognize(self, words, rng):
		'''Deterministic noisy hypothesis: about one token in ten is substituted.'''

		hyp = []

		for word in words:
			draw = rng.random()
			if draw < 0.07:
				hyp.append(str(rng.choice(VOCABULARY)))
			elif draw < 0.09:
				continue
			else:
				hyp.append(word)
			if rng.random() < 0.02:
				hyp.append(str(rng.choice(VOCABULARY)))

		return hyp


	def emotion_records(self, rng):

		rows = []

		for fold in range(1, N_FOLDS + 1):
			for emotion in EMOTIONS:
				for k in range(self.emotions_per_class):
					predicted = emotion if rng.random() < 0.6 else str(rng.choice(EMOTIONS))
					rows.append(('emo{0}-{1}-{2:02d}'.format(fold, emotion[:3], k), fold, emotion, predicted))

		return sorted(rows)


	def generate(self, root):

		rng = np.random.default_rng([self.seed, 2])
		wav_folder = os.path.join(root, 'wav')

		enroll = DataDir({}, {}, {}, {})
		trial = DataDir({}, {}, {}, {})
		hyp = []

		for profile in self.speakers():

			for data_dir, tag, count in ((enroll, 'e', self.enroll_per_speaker), (trial, 't', self.trials_per_speaker)):

				data_dir.spk2gender[profile.speaker_id] = profile.gender

				for k in range(count):

					utt = '{0}-{1}{2}'.format(profile.speaker_id, tag, k + 1)
					path = os.path.join(wav_folder, '{0}.wav'.format(utt))

					write_wav(self.synthesize(profile, rng), path)

					words = self.sentence(rng)
					data_dir.wav_index[utt] = path
					data_dir.utt2spk[utt] = profile.speaker_id
					data_dir.transcripts[utt] = words

					if tag == 't':
						hyp.append([utt] + self.recognize(words, rng))

		write_data_dir(enroll, os.path.join(root, 'enrolls'))
		write_data_dir(trial, os.path.join(root, 'trials_dir'))

		pairs = []
		for speaker in enroll.speakers:
			for utt in trial.utterances:
				if trial.spk2gender[trial.utt2spk[utt]] == enroll.spk2gender[speaker]:
					label = SAME_SPEAKER if trial.utt2spk[utt] == speaker else DIFFERENT_SPEAKER
					pairs.append(TrialPair(speaker, utt, label))

		write_trials(os.path.join(root, 'trials'), pairs)
		write_table(os.path.join(root, 'hyp'), hyp)
		write_table(os.path.join(root, 'emotions'), self.emotion_records(rng))

		return ToyCorpus(root, os.path.join(root, 'enrolls'), os.path.join(root, 'trials_dir'),
						 os.path.join(root, 'trials'), os.path.join(root, 'hyp'), os.path.join(root, 'emotions'),
						 len(enroll.wav_index) + len(trial.wav_index), len(pairs))


	def main(self, cfg):

		progress('!# Begin')

		if cfg.get('speakers'):
			self.n_speakers = cfg.get('speakers')
		self.seed = cfg.seed

		progress('! Generate toy corpus')
		corpus = self.generate(cfg.out_dir)

		print('N_UTTERANCES={0}'.format(corpus.n_utterances))
		print('N_TRIALS={0}'.format(corpus.n_trials))

		progress('!# End')

		return corpus

'''
	Phase-sensitive toy speaker embedding: the mean LPC log-envelope of the
	voiced frames of an utterance. Moving formants moves the vector, which is
	all the end-to-end chain needs from an extractor.
'''

import os
import logging
import multiprocessing as mp
from collections import OrderedDict

import numpy as np
from scipy import signal

from audio.framing import FramePlan, frame_signal
from audio.wavio import read_wav
from lpc.core import analyze_frame
from scenario.datadir import load_data_dir
from src.config import LPC_ORDER, progress
from src.errors import DegenerateFrame, EmptySignal, VoicePrivacyError, UtteranceFailed

from .asv import Embedding, write_embeddings


N_BINS = 48
ENERGY_FLOOR_DB = -40.0


class ToyExtractor:


	def __init__(self, lpc_order=LPC_ORDER, n_bins=N_BINS, plan=None):

		self.lpc_order = lpc_order
		self.n_bins = n_bins
		self.plan = plan or FramePlan.default()


	def voiced(self, frames):

		energy = np.sum(frames ** 2, axis=1)
		if not np.any(energy > 0):
			return np.zeros(len(frames), dtype=bool)

		level = 10.0 * np.log10(np.maximum(energy, 1e-30) / np.max(energy))

		return level > ENERGY_FLOOR_DB


	def envelope(self, frame):

		lpc = analyze_frame(frame, self.lpc_order)
		_, response = signal.freqz([1.0], lpc.polynomial(), worN=self.n_bins)
		log_env = 20.0 * np.log10(np.abs(response) + 1e-12)

		# gain-free shape only
		return log_env - np.mean(log_env)


	def embed(self, w):

		frames = frame_signal(w, self.plan)
		envelopes = []

		for frame in frames[self.voiced(frames)]:
			try:
				envelopes.append(self.envelope(frame))
			except DegenerateFrame:
				continue

		if not envelopes:
			raise EmptySignal('no voiced frame to embed')

		return np.mean(envelopes, axis=0)


	def extract(self, data_dir, workers=1):

		jobs = [(utt, data_dir.wav_index[utt], self.lpc_order, self.n_bins) for utt in data_dir.utterances]

		if workers > 1 and len(jobs) > 1:
			with mp.Pool(workers) as pool:
				results = pool.map(embed_file, jobs)
		else:
			results = [embed_file(job) for job in jobs]

		embeddings = OrderedDict()

		for utt, vector, failure in results:
			if failure is not None:
				raise UtteranceFailed(utt, failure[0], failure[1])
			embeddings[utt] = Embedding(utt, vector)

		return embeddings


	def main(self, cfg):

		progress('!# Begin')

		progress('! Load data dir')
		data_dir = load_data_dir(cfg.data_dir)

		progress('! Extract embeddings')
		embeddings = self.extract(data_dir, cfg.workers)

		path = cfg.get('embeddings') or os.path.join(cfg.out_dir, 'embeddings.txt')
		folder = os.path.dirname(path)
		if folder and not os.path.exists(folder):
			os.makedirs(folder)

		write_embeddings(path, embeddings)
		logging.info('Wrote %d embeddings to %s' % (len(embeddings), path))
		print('N_EMBEDDINGS={0}'.format(len(embeddings)))

		progress('!# End')


def embed_file(job):
	'''Worker entry point; failures travel back as (message, exit code).'''

	utt, path, lpc_order, n_bins = job

	try:
		vector = ToyExtractor(lpc_order, n_bins).embed(read_wav(path))
	except VoicePrivacyError as e:
		return utt, None, (str(e), e.exit_code)

	return utt, vector, None

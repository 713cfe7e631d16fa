import os
import glob
import fnmatch
import logging
from collections import namedtuple
from dataclasses import dataclass, field

from src.errors import MalformedLine, DuplicateUtterance, OrphanUtterance, MissingGender, MissingFile, IoError


'''
	Field layout of every line-oriented file. 'fields' is the number of
	space-separated fields ('exact' or at least); 'rest' keeps everything
	after the key as one value.
'''
FILTERS = {
			'wav.scp': {'fields': 2, 'exact': False, 'rest': True, 'unique': True},
			'utt2spk': {'fields': 2, 'exact': True, 'rest': False, 'unique': True},
			'spk2gender': {'fields': 2, 'exact': True, 'rest': False, 'unique': True},
			'text': {'fields': 1, 'exact': False, 'rest': False, 'unique': True},
			'embeddings': {'fields': 2, 'exact': False, 'rest': False, 'unique': True},
			'trials': {'fields': 3, 'exact': True, 'rest': False, 'unique': False},
			'scores': {'fields': 3, 'exact': True, 'rest': False, 'unique': False},
			'emotions': {'fields': 4, 'exact': True, 'rest': False, 'unique': True},
			'utt2alpha': {'fields': 2, 'exact': True, 'rest': False, 'unique': True, 'comments': True},
}

GENDERS = ('F', 'M')

SUBMISSION_LAYOUT = ['exp/results_summary',
					 'exp/asv_orig/cosine_out',
					 'exp/asv_anon*/cosine_out',
					 'exp/asr',
					 'exp/ser/*.csv']

SUBMISSION_ENTRIES = ['results_summary', 'asv_orig', 'asv_anon*', 'asr', 'ser']


SubmissionReport = namedtuple('SubmissionReport', ['missing', 'extra'])


def read_lines(path):

	if not os.path.exists(path):
		raise MissingFile(path)

	try:
		with open(path, 'r', encoding='utf-8') as data_file:
			for indx, line in enumerate(data_file):
				yield indx + 1, line.rstrip('\n').rstrip('\r')
	except UnicodeDecodeError as e:
		raise MalformedLine(path, '?', 'not UTF-8: {0}'.format(e))
	except OSError as e:
		raise IoError('{0}: {1}'.format(path, e))


def read_table(path, layout):
	'''Yield (line number, fields) for each line, rejecting malformed ones.'''

	fields = FILTERS[layout]['fields']
	exact = FILTERS[layout]['exact']
	rest = FILTERS[layout]['rest']
	unique = FILTERS[layout]['unique']
	comments = FILTERS[layout].get('comments', False)

	seen = set()

	for line_no, line in read_lines(path):

		if comments and line.startswith('#'):
			continue

		if rest:
			line_clean = line.strip().split(None, fields - 1)
		else:
			line_clean = line.split()

		if len(line_clean) < fields or (exact and len(line_clean) != fields):
			raise MalformedLine(path, line_no, 'expected {0} fields, got {1}'.format(fields, len(line_clean)))

		if unique:
			if line_clean[0] in seen:
				raise DuplicateUtterance(path, line_no, line_clean[0])
			seen.add(line_clean[0])

		yield line_no, line_clean


def write_table(path, rows):

	try:
		with open(path, 'w', encoding='utf-8', newline='\n') as write_file:
			for row in rows:
				write_file.write(' '.join(str(x) for x in row) + '\n')
	except OSError as e:
		raise IoError('{0}: {1}'.format(path, e))


@dataclass
class DataDir:

	wav_index: dict
	utt2spk: dict
	spk2gender: dict = field(default_factory=dict)
	transcripts: dict = None
	path: str = None


	@property
	def utterances(self):
		return sorted(self.wav_index)


	@property
	def speakers(self):
		return sorted(set(self.utt2spk.values()))


def read_wav_scp(path):

	wav_index = {}

	for line_no, (utt, wav_path) in read_table(path, 'wav.scp'):

		wav_path = wav_path.strip()
		if wav_path.endswith('|') or wav_path.startswith('|'):
			raise MalformedLine(path, line_no, 'command pipes are not supported')

		wav_index[utt] = wav_path

	return wav_index


def read_utt2spk(path):
	return {utt: spk for _, (utt, spk) in read_table(path, 'utt2spk')}


def read_spk2gender(path):

	genders = {}

	for line_no, (spk, gender) in read_table(path, 'spk2gender'):

		gender = gender.upper()
		if gender not in GENDERS:
			raise MalformedLine(path, line_no, 'gender must be one of {0}'.format('/'.join(GENDERS)))
		genders[spk] = gender

	return genders


def read_text(path):
	return {fields[0]: fields[1:] for _, fields in read_table(path, 'text')}


def read_utt2alpha(path):

	alphas = {}

	for line_no, (utt, alpha) in read_table(path, 'utt2alpha'):
		try:
			alphas[utt] = float(alpha)
		except ValueError:
			raise MalformedLine(path, line_no, 'non-numeric alpha')

	return alphas


def load_data_dir(path):

	logging.debug('Loading data dir %s' % path)

	wav_index = read_wav_scp(os.path.join(path, 'wav.scp'))
	utt2spk = read_utt2spk(os.path.join(path, 'utt2spk'))

	spk2gender = {}
	if os.path.exists(os.path.join(path, 'spk2gender')):
		spk2gender = read_spk2gender(os.path.join(path, 'spk2gender'))
	else:
		logging.warning('%s has no spk2gender, per-gender results unavailable' % path)

	transcripts = None
	if os.path.exists(os.path.join(path, 'text')):
		transcripts = read_text(os.path.join(path, 'text'))

	for utt in sorted(utt2spk):
		if utt not in wav_index:
			raise OrphanUtterance(utt, 'listed in utt2spk but not in wav.scp')

	for utt in sorted(wav_index):
		if utt not in utt2spk:
			raise OrphanUtterance(utt, 'listed in wav.scp but has no speaker in utt2spk')

	if spk2gender:
		for spk in sorted(set(utt2spk.values())):
			if spk not in spk2gender:
				raise MissingGender(spk)

	if transcripts is not None:
		for utt in sorted(transcripts):
			if utt not in wav_index:
				raise OrphanUtterance(utt, 'listed in text but not in wav.scp')

	return DataDir(wav_index, utt2spk, spk2gender, transcripts, path)


def write_data_dir(data_dir, path):

	if not os.path.exists(path):
		os.makedirs(path)

	utterances = data_dir.utterances

	write_table(os.path.join(path, 'wav.scp'), [(u, data_dir.wav_index[u]) for u in utterances])
	write_table(os.path.join(path, 'utt2spk'), [(u, data_dir.utt2spk[u]) for u in utterances])

	if data_dir.spk2gender:
		write_table(os.path.join(path, 'spk2gender'), sorted(data_dir.spk2gender.items()))

	if data_dir.transcripts is not None:
		write_table(os.path.join(path, 'text'), [[u] + list(data_dir.transcripts[u]) for u in sorted(data_dir.transcripts)])


def validate_submission_layout(root):

	missing = [pattern for pattern in SUBMISSION_LAYOUT if not glob.glob(os.path.join(root, pattern))]

	extra = []
	exp = os.path.join(root, 'exp')

	if os.path.isdir(exp):
		for entry in sorted(os.listdir(exp)):
			if not any(fnmatch.fnmatch(entry, name) for name in SUBMISSION_ENTRIES):
				extra.append('exp/' + entry)

	for entry in missing:
		logging.warning('Submission layout: missing %s' % entry)
	for entry in extra:
		logging.warning('Submission layout: unexpected %s' % entry)

	return SubmissionReport(missing, extra)

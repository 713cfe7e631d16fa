'''
	Exception hierarchy shared by every task.

	Each family carries the exit status the driver returns for it:
	2 parse error, 3 metric or signal precondition violation, 4 I/O.
'''


class VoicePrivacyError(Exception):

	exit_code = 1


# Parse errors

class ParseError(VoicePrivacyError):

	exit_code = 2


class NotWav(ParseError):
	pass


class UnsupportedFormat(ParseError):
	pass


class TruncatedFile(ParseError):
	pass


class MalformedLine(ParseError):

	def __init__(self, file, line, reason=''):
		self.file = str(file)
		self.line = line
		super().__init__('{0}:{1}: malformed line {2}'.format(self.file, line, reason).strip())


class DuplicateUtterance(ParseError):

	def __init__(self, file, line, utterance_id):
		self.file = str(file)
		self.line = line
		self.utterance_id = utterance_id
		super().__init__('{0}:{1}: duplicate utterance {2}'.format(self.file, line, utterance_id))


class OrphanUtterance(ParseError):

	def __init__(self, utterance_id, reason=''):
		self.utterance_id = utterance_id
		super().__init__('orphan utterance {0} {1}'.format(utterance_id, reason).strip())


class MissingGender(ParseError):

	def __init__(self, speaker_id):
		self.speaker_id = speaker_id
		super().__init__('no gender for speaker {0}'.format(speaker_id))


class NonFinite(ParseError):
	pass


class OutOfRange(ParseError):
	pass


# Metric errors

class MetricError(VoicePrivacyError):

	exit_code = 3


class MissingClass(MetricError):
	pass


class EmptyReference(MetricError):
	pass


class MissingReferenceClass(MetricError):

	def __init__(self, emotion, fold=None):
		self.emotion = emotion
		self.fold = fold
		super().__init__('class {0} has no reference sample in fold {1}'.format(emotion, fold))


class WrongFoldCount(MetricError):
	pass


class EmptyEnrollment(MetricError):
	pass


class DimensionMismatch(MetricError):
	pass


class ZeroNorm(MetricError):
	pass


class ZeroNormResult(ZeroNorm):
	pass


class MissingEnrollment(MetricError):

	def __init__(self, speaker_id):
		self.speaker_id = speaker_id
		super().__init__('no enrollment vectors for speaker {0}'.format(speaker_id))


class MissingTrialVector(MetricError):

	def __init__(self, utterance_id):
		self.utterance_id = utterance_id
		super().__init__('no embedding for trial utterance {0}'.format(utterance_id))


# Signal errors

class SignalError(VoicePrivacyError):

	exit_code = 3


class EmptySignal(SignalError):
	pass


class PlanMismatch(SignalError):
	pass


class OrderTooLarge(SignalError):
	pass


class DegenerateFrame(SignalError):
	pass


class UnstableFilter(SignalError):
	pass


class NonConvergence(SignalError):
	pass


class ConjugateViolation(SignalError):
	pass


class DomainError(SignalError):
	pass


class FramePassthrough(SignalError):
	pass


# Storage errors

class StorageError(VoicePrivacyError):

	exit_code = 4


class IoError(StorageError):
	pass


class MissingFile(StorageError):

	def __init__(self, path):
		self.path = str(path)
		super().__init__('missing file {0}'.format(self.path))


class UtteranceFailed(VoicePrivacyError):
	'''A worker failure re-raised in the driver process with its original exit status.'''

	def __init__(self, utterance_id, reason, exit_code=1):
		self.utterance_id = utterance_id
		self.exit_code = exit_code
		super().__init__('utterance {0}: {1}'.format(utterance_id, reason))

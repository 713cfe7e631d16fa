import numpy as np
import pytest
from scipy.io import wavfile

from audio.wavio import Waveform, read_wav, write_wav, quantize
from src.errors import NotWav, UnsupportedFormat, TruncatedFile, MissingFile, NonFinite


class TestReadWav:

	def test_zero_file(self, tmp_path):
		path = tmp_path / 'zero.wav'
		wavfile.write(path, 16000, np.zeros(16, dtype=np.int16))

		w = read_wav(path)

		assert len(w) == 16
		assert np.all(w.samples == 0.0)
		assert w.sample_rate == 16000

	def test_scaling(self, tmp_path):
		path = tmp_path / 'max.wav'
		wavfile.write(path, 16000, np.array([32767, -32768, 1], dtype=np.int16))

		w = read_wav(path)

		np.testing.assert_allclose(w.samples, [32767 / 32768, -1.0, 1 / 32768])

	def test_byte_identical_round_trip(self, tmp_path):
		rng = np.random.default_rng(7)

		for indx in range(100):
			pcm = rng.integers(-32768, 32768, size=int(rng.integers(1, 2000))).astype(np.int16)
			source = tmp_path / 'src_{0}.wav'.format(indx)
			target = tmp_path / 'dst_{0}.wav'.format(indx)
			wavfile.write(source, 16000, pcm)

			write_wav(read_wav(source), target)

			assert source.read_bytes() == target.read_bytes()

	def test_not_wav(self, tmp_path):
		path = tmp_path / 'noise.wav'
		path.write_bytes(b'this is not a riff file at all, only text')

		with pytest.raises(NotWav):
			read_wav(path)

	def test_stereo_rejected(self, tmp_path):
		path = tmp_path / 'stereo.wav'
		wavfile.write(path, 16000, np.zeros((10, 2), dtype=np.int16))

		with pytest.raises(UnsupportedFormat):
			read_wav(path)

	def test_wrong_rate_rejected(self, tmp_path):
		path = tmp_path / 'rate.wav'
		wavfile.write(path, 8000, np.zeros(10, dtype=np.int16))

		with pytest.raises(UnsupportedFormat):
			read_wav(path)

	def test_float_samples_rejected(self, tmp_path):
		path = tmp_path / 'float.wav'
		wavfile.write(path, 16000, np.zeros(10, dtype=np.float32))

		with pytest.raises(UnsupportedFormat):
			read_wav(path)

	def test_truncated(self, tmp_path):
		path = tmp_path / 'cut.wav'
		wavfile.write(path, 16000, np.ones(1000, dtype=np.int16))
		path.write_bytes(path.read_bytes()[:44 + 500])

		with pytest.raises(TruncatedFile):
			read_wav(path)

	def test_missing(self, tmp_path):
		with pytest.raises(MissingFile):
			read_wav(tmp_path / 'absent.wav')


class TestWriteWav:

	def test_quantizer_values(self):
		pcm = quantize([0.0, 2.0, -0.5, -1.0, -3.0, 1.5 / 32768, -1.5 / 32768, 0.4 / 32768])

		assert list(pcm) == [0, 32767, -16384, -32768, -32768, 2, -2, 0]

	def test_read_after_write_within_one_step(self, tmp_path):
		rng = np.random.default_rng(3)
		w = Waveform(rng.uniform(-1, 1, size=4000))
		path = tmp_path / 'w.wav'

		write_wav(w, path)
		back = read_wav(path)

		assert len(back) == len(w)
		assert np.max(np.abs(back.samples - w.samples)) <= 2.0 ** -15

	def test_creates_folders(self, tmp_path):
		path = tmp_path / 'a' / 'b' / 'w.wav'

		write_wav(Waveform(np.zeros(8)), path)

		assert path.exists()


class TestWaveform:

	def test_rejects_other_rates(self):
		with pytest.raises(UnsupportedFormat):
			Waveform(np.zeros(4), 8000)

	def test_rejects_non_finite(self):
		with pytest.raises(NonFinite):
			Waveform([0.0, np.nan])

	def test_does_not_freeze_caller_array(self):
		samples = np.zeros(4)

		Waveform(samples)
		samples[0] = 1.0

		assert samples[0] == 1.0

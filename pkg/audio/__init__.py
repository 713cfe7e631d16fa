from .wavio import Waveform, read_wav, write_wav, quantize
from .framing import FramePlan, frame_signal, overlap_add

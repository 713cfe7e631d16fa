import os

import pytest

import vpeval


def write(path, text):
	path.write_text(text)
	return str(path)


class TestCli:

	def test_wer_identical(self, tmp_path, capsys):
		ref = write(tmp_path / 'ref', 'u1 the cat sat\nu2 on the mat\n')

		code = vpeval.main(['wer', '--ref', ref, '--hyp', ref, '--out-dir', str(tmp_path), '--workers', '1'])

		assert code == 0
		assert 'WER=0.00' in capsys.readouterr().out.splitlines()
		assert (tmp_path / 'dev.wer').read_text().startswith('WER=0.00\n')

	def test_wer_missing_hypothesis(self, tmp_path, capsys):
		ref = write(tmp_path / 'ref', 'u1 the cat sat\nu2 on the mat\n')
		hyp = write(tmp_path / 'hyp', 'u1 the cat sat\n')

		assert vpeval.main(['wer', '--ref', ref, '--hyp', hyp, '--out-dir', str(tmp_path), '--workers', '1']) == 0
		assert 'WER=50.00' in capsys.readouterr().out.splitlines()

	def test_eer_perfect(self, tmp_path, capsys):
		trials = write(tmp_path / 'trials', 'A a1 target\nA b1 nontarget\nB b1 target\nB a1 nontarget\n')
		scores = write(tmp_path / 'scores', 'A a1 0.9\nA b1 0.1\nB b1 0.8\nB a1 0.2\n')

		code = vpeval.main(['eer', '--trials', trials, '--scores', scores, '--out-dir', str(tmp_path), '--dataset', 'eval'])

		assert code == 0
		assert 'EER=0.00' in capsys.readouterr().out.splitlines()
		assert os.path.exists(str(tmp_path / 'eval.eer'))

	def test_eer_scenario_label(self, tmp_path):
		trials = write(tmp_path / 'trials', 'A a1 target\nA b1 nontarget\n')
		scores = write(tmp_path / 'scores', 'A a1 0.9\nA b1 0.1\n')

		vpeval.main(['eer', '--trials', trials, '--scores', scores, '--out-dir', str(tmp_path), '--scenario', 'asv_orig'])

		assert os.path.exists(str(tmp_path / 'dev_asv_orig.eer'))

	def test_uar(self, tmp_path, capsys):
		rows = ['e{0}{1} {0} {1} {1}'.format(fold, emotion) for fold in range(1, 6)
				for emotion in ('neutral', 'anger', 'sadness', 'happiness')]
		emotions = write(tmp_path / 'emotions', '\n'.join(rows) + '\n')

		assert vpeval.main(['uar', '--emotions', emotions, '--out-dir', str(tmp_path)]) == 0
		assert 'UAR=100.00' in capsys.readouterr().out.splitlines()

	def test_malformed_file_exit_code(self, tmp_path):
		trials = write(tmp_path / 'trials', 'A a1 target\nA b1\n')
		scores = write(tmp_path / 'scores', 'A a1 0.9\n')

		assert vpeval.main(['eer', '--trials', trials, '--scores', scores, '--out-dir', str(tmp_path)]) == 2

	def test_non_finite_embedding_exit_code(self, tmp_path):
		trials = write(tmp_path / 'trials', 'A t1 target\n')
		enroll_dir = tmp_path / 'enrolls'
		enroll_dir.mkdir()
		write(enroll_dir / 'utt2spk', 'e1 A\n')
		enroll_embeddings = write(tmp_path / 'enroll.txt', 'e1 1.0 nan\n')
		embeddings = write(tmp_path / 'trial.txt', 't1 1.0 0.5\n')

		code = vpeval.main(['score_asv', '--trials', trials, '--enroll-dir', str(enroll_dir),
							'--enroll-embeddings', enroll_embeddings, '--embeddings', embeddings,
							'--out-dir', str(tmp_path)])

		assert code == 2

	def test_missing_file_exit_code(self, tmp_path):
		code = vpeval.main(['wer', '--ref', str(tmp_path / 'nope'), '--hyp', str(tmp_path / 'nope'), '--out-dir', str(tmp_path)])

		assert code == 4

	def test_missing_argument_exit_code(self, tmp_path):
		assert vpeval.main(['eer', '--out-dir', str(tmp_path)]) == 4

	def test_metric_error_exit_code(self, tmp_path):
		trials = write(tmp_path / 'trials', 'A a1 target\nB b1 target\n')
		scores = write(tmp_path / 'scores', 'A a1 0.9\nB b1 0.8\n')

		assert vpeval.main(['eer', '--trials', trials, '--scores', scores, '--out-dir', str(tmp_path)]) == 3

	def test_alpha_range_exit_code(self, tmp_path):
		folder = tmp_path / 'data'
		folder.mkdir()
		write(folder / 'wav.scp', '')
		write(folder / 'utt2spk', '')

		code = vpeval.main(['anonymize', '--data-dir', str(folder), '--out-dir', str(tmp_path / 'out'),
							'--alpha-min', '0.6', '--alpha-max', '0.5'])

		assert code == 3

	def test_rank(self, tmp_path, capsys):
		results = write(tmp_path / 'results.tsv',
						'system_id\teer_dev\teer_eval\twer_dev\twer_eval\tuar_dev\tuar_eval\treference\n'
						'B3\t25.24\t27.32\t4.29\t4.35\t38.09\t37.57\t0\n'
						'B6\t23.05\t21.14\t9.69\t9.09\t36.39\t36.13\t0\n'
						'B2\t7.48\t4.52\t10.44\t9.95\t55.61\t53.49\t0\n')

		assert vpeval.main(['rank', '--results', results, '--out-dir', str(tmp_path)]) == 0

		lines = capsys.readouterr().out.splitlines()
		assert 'INTERVAL_B2=none' in lines
		assert 'INTERVAL_B3=[20,30)' in lines
		assert 'WER_ORDER_2=B3,B6' in lines
		assert os.path.exists(str(tmp_path / 'rankings.tsv'))

	def test_plots(self, tmp_path):
		results = write(tmp_path / 'results.tsv',
						'system_id\teer_dev\teer_eval\twer_dev\twer_eval\tuar_dev\tuar_eval\treference\n'
						'Orig\t5.72\t4.59\t1.80\t1.85\t69.08\t71.06\t1\n'
						'B5\t34.37\t34.34\t4.73\t4.37\t38.08\t38.17\t0\n')
		trials = write(tmp_path / 'trials', 'A a1 target\nA b1 nontarget\nB b1 target\nB a1 nontarget\n')
		scores = write(tmp_path / 'scores', 'A a1 0.9\nA b1 0.3\nB b1 0.2\nB a1 0.1\n')

		assert vpeval.main(['rank', '--results', results, '--out-dir', str(tmp_path / 'rank'), '--plot']) == 0
		assert vpeval.main(['eer', '--trials', trials, '--scores', scores, '--out-dir', str(tmp_path / 'eer'),
							'--dataset', 'eval', '--plot']) == 0

		for path in ('rank/ranking_wer.pdf', 'rank/ranking_uar.pdf', 'eer/eval_det.pdf'):
			assert (tmp_path / path).read_bytes().startswith(b'%PDF')

	def test_validate(self, tmp_path, capsys):
		assert vpeval.main(['validate', '--out-dir', str(tmp_path)]) == 0
		assert 'N_MISSING=5' in capsys.readouterr().out.splitlines()

	def test_unknown_subcommand(self):
		with pytest.raises(SystemExit) as info:
			vpeval.main(['translate'])

		assert info.value.code == 2

from src.config import progress

from .datadir import validate_submission_layout


class Validate:


	def main(self, cfg):

		progress('!# Begin')

		progress('! Check submission layout')
		report = validate_submission_layout(cfg.data_dir or cfg.out_dir)

		for entry in report.missing:
			print('MISSING={0}'.format(entry))
		for entry in report.extra:
			print('EXTRA={0}'.format(entry))
		print('N_MISSING={0}'.format(len(report.missing)))
		print('N_EXTRA={0}'.format(len(report.extra)))

		progress('!# End')

		return report

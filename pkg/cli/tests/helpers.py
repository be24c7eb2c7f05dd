import json
import shutil
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command


class WorkdirMixin:
    """A scratch directory per test plus a call_command returning stdout."""

    def setUp(self):
        super().setUp()
        self.workdir = Path(tempfile.mkdtemp(prefix='topoperiod-'))
        self.addCleanup(shutil.rmtree, self.workdir, ignore_errors=True)

    def path(self, name):
        return str(self.workdir / name)

    def call(self, command, **options):
        out = StringIO()
        call_command(command, stdout=out, **options)
        return out.getvalue()

    def write_json(self, name, data):
        with open(self.path(name), 'w', encoding='utf-8') as fp:
            json.dump(data, fp)
        return self.path(name)

    def write_lines(self, name, records):
        with open(self.path(name), 'w', encoding='utf-8') as fp:
            for record in records:
                fp.write(json.dumps(record) + '\n')
        return self.path(name)

    def read_lines(self, name):
        with open(self.path(name), 'r', encoding='utf-8') as fp:
            return [json.loads(line) for line in fp if line.strip()]

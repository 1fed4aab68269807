"""
Copyright 2017 The srbm-asymptotics Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
from srbm_asymptotics import exceptions

PARAMETER_KEYS = ('sigma11', 'sigma12', 'sigma22', 'mu1', 'mu2',
                  'r11', 'r12', 'r21', 'r22')


class Model(object):
    """Value object compared and printed through its attributes."""

    def __str__(self):
        return str(self.__dict__)

    def __repr__(self):
        return '%s(%s)' % (type(self).__name__, self)

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        return self.__dict__ == other.__dict__

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(tuple(sorted(self.__dict__.items())))

    def to_dict(self):
        return dict(self.__dict__)


class ParameterFile(Model):

    def __init__(self, values, source=None):
        self.values = dict(values)
        self.source = source

    def __hash__(self):
        return hash(tuple(sorted(self.values.items())))

    @classmethod
    def from_text(cls, text, source=None):
        """Return a ParameterFile from key=value lines, like:

            # identity reflection
            sigma11 = 1
            mu1 = -1
        """
        values = {}
        for lineno, raw in enumerate(text.split('\n'), 1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise exceptions.InvalidParameterFile(
                    reason='line %d is not key=value: %r' % (lineno, raw))
            key, value = [x.strip() for x in line.split('=', 1)]
            if key not in PARAMETER_KEYS:
                raise exceptions.InvalidParameterFile(
                    reason='unknown key %r on line %d' % (key, lineno))
            if key in values:
                raise exceptions.InvalidParameterFile(
                    reason='duplicate key %r on line %d' % (key, lineno))
            try:
                values[key] = float(value)
            except ValueError:
                raise exceptions.InvalidParameterFile(
                    reason='%r is not a decimal literal' % value)

        missing = [k for k in PARAMETER_KEYS if k not in values]
        if missing:
            raise exceptions.InvalidParameterFile(
                reason='missing keys: %s' % ', '.join(missing))
        return cls(values, source=source)

    @classmethod
    def from_path(cls, path):
        try:
            with open(path) as handle:
                text = handle.read()
        except (IOError, OSError) as exc:
            raise exceptions.InvalidParameterFile(reason=str(exc))
        return cls.from_text(text, source=path)

    def to_text(self):
        return ''.join('%s = %r\n' % (key, self.values[key])
                       for key in PARAMETER_KEYS)

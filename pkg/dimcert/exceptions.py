# Copyright 2026 The dimcert developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


class DimcertError(Exception):
    """Base class of every error raised on behalf of correlation data.

    Each error knows how to describe itself as a plain dict (used by the command line with --json-errors) and which
    process exit code it maps to.
    """
    exit_code = 1

    def __init__(self, message, **details):
        super(DimcertError, self).__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        ret = {"error": type(self).__name__, "message": self.message}
        ret.update(self.details)
        return ret


class CorrelationValidationError(DimcertError):
    """Raised when a probability tensor does not describe a valid correlation.

    violations is a list of dicts, one per offending entry or (x, y) slice.
    """
    exit_code = 2

    def __init__(self, message, violations=None, **details):
        self.violations = list(violations) if violations is not None else []
        super(CorrelationValidationError, self).__init__(message, violations=self.violations, **details)


class NegativeProbabilityError(CorrelationValidationError):
    pass


class NormalizationError(CorrelationValidationError):
    pass


class ShapeMismatchError(CorrelationValidationError):
    pass


class ParseError(DimcertError):
    exit_code = 3

    def __init__(self, message, line=None, field=None):
        super(ParseError, self).__init__(message, line=line, field=field)
        self.line = line
        self.field = field

    def __str__(self):
        where = []
        if self.line is not None:
            where.append("line %d" % self.line)
        if self.field is not None:
            where.append("field %r" % self.field)
        if where:
            return "%s (%s)" % (self.message, ", ".join(where))
        return self.message


class DegenerateDenominatorError(DimcertError):
    """The quadratic form inverted by a bound vanished: the data admits no finite-dimensional realization under exact
    arithmetic."""
    exit_code = 4


class TooLargeError(DimcertError):
    exit_code = 4

    def __init__(self, n, max_n):
        super(TooLargeError, self).__init__("exact face enumeration needs N <= %d, got N = %d" % (max_n, n),
                                            n=n, max_n=max_n)


class NotBinaryError(DimcertError):
    exit_code = 2


class WrongScenarioError(DimcertError):
    exit_code = 2


class OutOfRangeError(DimcertError):
    exit_code = 2


class InvalidRealizationError(DimcertError):
    exit_code = 4

    def __init__(self, message, violated=None):
        self.violated = list(violated) if violated is not None else []
        super(InvalidRealizationError, self).__init__(message, violated=self.violated)

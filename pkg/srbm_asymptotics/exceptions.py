# Copyright 2017 The srbm-asymptotics Authors
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may
# not use this file except in compliance with the License. You may obtain
# a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
# WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
# License for the specific language governing permissions and limitations
# under the License.
from tempest.lib import exceptions as lib_exc


class SrbmException(lib_exc.TempestException):
    message = "An unknown error occurred in the SRBM analysis"

    def __init__(self, *args, **kwargs):
        super(SrbmException, self).__init__(*args, **kwargs)
        self.kwargs = kwargs


class InvalidInput(SrbmException):
    message = "Invalid input: %(reason)s"


class AngleOutOfRange(InvalidInput):
    message = "Angle %(alpha)s is outside the open interval (0, pi/2)"


class InvalidParameterFile(InvalidInput):
    message = "Invalid parameter file: %(reason)s"


class ModelError(SrbmException):
    message = "The model is not usable: %(reason)s"


class UnstableModel(ModelError):
    message = "The SRBM is not stable (violated: %(violated)s)"


class UnsupportedDrift(ModelError):
    message = ("Drift %(mu)s is not supported, both coordinates must be "
               "negative")


class SingularTransform(ModelError):
    message = "Cone transform %(transform)s is singular"


class NotOnEllipse(ModelError):
    message = "Point %(point)s is not on the ellipse (gamma=%(value)s)"


class DegenerateArc(ModelError):
    message = "Arc end points coincide at %(point)s"


class ReflectionInfeasible(ModelError):
    message = ("No complementarity case is feasible for Y=%(value)s, "
               "check the reflection matrix")


class NotProductForm(ModelError):
    message = ("The model has no product-form stationary density "
               "(residual %(residual)s)")


class NumericFailure(SrbmException):
    message = "Numeric failure: %(reason)s"


class ConvergenceFailure(NumericFailure):
    message = "%(label)s failed to converge: %(reason)s"


class BranchDiscontinuity(NumericFailure):
    message = "Square-root branch lost along the path at %(where)s"


class QuadratureInconsistent(NumericFailure):
    message = ("Imaginary residual %(residual)s exceeds %(limit)s for "
               "x=%(x)s")


class NegativeDensity(NumericFailure):
    message = "Density %(value)s at x=%(x)s is negative beyond noise"


class ContinuationDiverged(NumericFailure):
    message = ("Continuation of %(which)s at s=%(s)s did not reach the "
               "initial domain within %(rotations)s rotations")


class PoleHit(NumericFailure):
    message = "Continuation of %(which)s hit a pole: %(factor)s vanishes"


class ResidueUnstable(NumericFailure):
    message = ("Residue extrapolants at %(point)s spread by %(spread)s "
               "(limit %(limit)s)")


class DerivativeAtBranchPoint(NumericFailure):
    message = "Implicit derivative is undefined at %(point)s"


class SaddleIsPole(NumericFailure):
    message = "Saddle point %(point)s coincides with the pole %(pole)s"


class SaddleMismatch(NumericFailure):
    message = ("Saddle %(point)s for alpha=%(alpha)s disagrees with the "
               "brute-force argmax %(brute)s")


class UnorderedThresholds(NumericFailure):
    message = ("Thresholds of case %(case)s are out of order: "
               "alpha1=%(alpha1)s, alpha2=%(alpha2)s")


class WrongRegime(NumericFailure):
    message = "Operation requires %(expected)s, got %(regime)s"


class ConstantUnavailable(NumericFailure):
    message = "Leading constant unavailable: %(reason)s"


class InsufficientData(NumericFailure):
    message = "Not enough data to estimate the ray rate: %(reason)s"

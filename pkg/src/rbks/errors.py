"""Exception types shared across the package."""


class RbksError(Exception):
    """Base class for all library errors."""


class UnsupportedSecurityLevel(RbksError):
    pass


class InvalidEncoding(RbksError):
    pass


# role hierarchy
class HierarchyError(RbksError):
    pass


class CycleDetected(HierarchyError):
    pass


class MultipleRoots(HierarchyError):
    pass


class UnreachableRole(HierarchyError):
    pass


class UnknownRole(HierarchyError):
    pass


# key management
class UnknownUser(RbksError):
    pass


class RootRoleNotRevocable(RbksError):
    pass


class MismatchedRoundData(RbksError):
    """Group key agreement participants derived unequal secrets."""


# encryption
class EmptyPolicy(RbksError):
    pass


class MissingRolePK(RbksError):
    pass


class MissingCloudKey(RbksError):
    pass


class AuthenticationFailure(RbksError):
    """Payload unwrap failed: wrong key or tampered blob."""


# trapdoors
class EmptyRoleSet(RbksError):
    pass


class EmptyKeywords(RbksError):
    pass


# cloud-side rejections; all map to the protocol's "bottom" outcome
class SearchRejected(RbksError):
    pass


class StaleTimestamp(SearchRejected):
    pass


class ReplayDetected(SearchRejected):
    pass


class UnknownOrRevokedUser(SearchRejected):
    pass


class InconsistentTrapdoor(SearchRejected):
    """The authentication consistency identity failed."""


class UnqualifiedRoles(SearchRejected):
    """Some policy role has no qualifying role in the presented set."""


class KeywordMismatch(SearchRejected):
    """Search identity failed: the trapdoor keyword is not embedded."""


# harness
class ScenarioInvalid(RbksError):
    pass


class ExpectationFailed(RbksError):
    pass

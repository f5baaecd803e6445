"""rbks: role-based authorized keyword search over encrypted cloud data.

Multi-organization deployment with hierarchical roles, conjunctive
keyword search on encrypted archives, cloud-side partial decryption and
two revocation modes.  See the README for the party model and the CLI.
"""

from .authority import (
    BulletinBoard,
    CloudKeys,
    MasterSecret,
    ProxyKeySet,
    PublicParams,
    RevocationToken,
    RoleParams,
    UserKeys,
    manage_role,
    pub_cloud_key_gen,
    revoke_role,
    revoke_user_complete,
    system_setup,
    user_priv_key_gen,
)
from .client import (
    PartialCiphertext,
    SearchSession,
    Trapdoor,
    full_dec,
    trap_gen,
    trapdoor_from_bytes,
    trapdoor_to_bytes,
)
from .cloud import CloudServer, CiphertextStore, ReplayCache
from .errors import RbksError, SearchRejected
from .harness import Scenario, World, load_scenario, random_scenario, run_scenario
from .hierarchy import RoleHierarchy, RoleId, build_hierarchy, parse_hierarchy
from .owner import (
    AccessPolicy,
    Ciphertext,
    ciphertext_from_bytes,
    ciphertext_to_bytes,
    encrypt,
    unwrap_payload,
    wrap_payload,
)
from .pairing import BilinearContext, G1Element, GTElement, setup_context
from .rolemanager import RoleKeyPair, update_role_keys, user_role_key_gen

__version__ = "1.0.0"

__all__ = [
    "AccessPolicy",
    "BilinearContext",
    "BulletinBoard",
    "Ciphertext",
    "CiphertextStore",
    "CloudKeys",
    "CloudServer",
    "G1Element",
    "GTElement",
    "MasterSecret",
    "PartialCiphertext",
    "ProxyKeySet",
    "PublicParams",
    "RbksError",
    "ReplayCache",
    "RevocationToken",
    "RoleHierarchy",
    "RoleId",
    "RoleKeyPair",
    "RoleParams",
    "Scenario",
    "SearchRejected",
    "SearchSession",
    "Trapdoor",
    "UserKeys",
    "World",
    "build_hierarchy",
    "ciphertext_from_bytes",
    "ciphertext_to_bytes",
    "encrypt",
    "full_dec",
    "load_scenario",
    "manage_role",
    "parse_hierarchy",
    "pub_cloud_key_gen",
    "random_scenario",
    "revoke_role",
    "revoke_user_complete",
    "run_scenario",
    "setup_context",
    "system_setup",
    "trap_gen",
    "trapdoor_from_bytes",
    "trapdoor_to_bytes",
    "unwrap_payload",
    "update_role_keys",
    "user_priv_key_gen",
    "user_role_key_gen",
    "wrap_payload",
]

import json
from typing import Union

import numpy as np

from weyl_moe.channels.channel import Channel
from weyl_moe.channels.channeltypes import ChannelType
from weyl_moe.channels.kraus import KrausChannel
from weyl_moe.channels.weyl import WeylMixSpec
from weyl_moe.errors import InvalidParameter


class ChannelKeys:
    Kind = "kind"
    Dimension = "d"
    Coefficients = "coeffs"
    Kraus = "kraus"


def to_dict(ch: Channel) -> dict:
    if isinstance(ch, WeylMixSpec):
        return {
            ChannelKeys.Kind: ChannelType.weyl.value,
            ChannelKeys.Dimension: ch.d,
            ChannelKeys.Coefficients: ch.coeffs.tolist(),
        }
    return {
        ChannelKeys.Kind: ChannelType.kraus.value,
        ChannelKeys.Dimension: ch.dim_in,
        ChannelKeys.Kraus: [
            [[[float(z.real), float(z.imag)] for z in row] for row in k]
            for k in ch.kraus_operators()
        ],
    }


def from_dict(d: dict, unchecked=False) -> Channel:
    kind = d.get(ChannelKeys.Kind)
    if kind is None:
        # a bare {"kraus": ...} object is accepted as a Kraus channel
        kind = ChannelType.kraus.value if ChannelKeys.Kraus in d else None

    if kind == ChannelType.weyl.value:
        coeffs = d.get(ChannelKeys.Coefficients)
        if coeffs is None:
            raise InvalidParameter(
                "Weyl channel JSON requires 'coeffs'", parameter="channel-json"
            )
        dim = int(d.get(ChannelKeys.Dimension, len(coeffs)))
        return WeylMixSpec(dim, coeffs, unchecked=unchecked)

    if kind == ChannelType.kraus.value:
        raw = d.get(ChannelKeys.Kraus)
        if not raw:
            raise InvalidParameter(
                "Kraus channel JSON requires a non-empty 'kraus' list",
                parameter="channel-json",
            )
        ops = [np.array(k, dtype=float) for k in raw]
        return KrausChannel(
            [k[..., 0] + 1j * k[..., 1] for k in ops], unchecked=unchecked
        )

    raise InvalidParameter(
        f"Unrecognised channel kind '{kind}', expected one of {ChannelType.all()}",
        parameter="channel-json",
    )


def to_json(ch: Channel) -> str:
    return json.dumps(to_dict(ch), sort_keys=True)


def from_json(s: Union[str, dict], unchecked=False) -> Channel:
    if isinstance(s, dict):
        return from_dict(s, unchecked=unchecked)
    try:
        parsed = json.loads(s)
    except ValueError as e:
        raise InvalidParameter(
            f"Couldn't parse channel JSON: {e}", parameter="channel-json"
        )
    return from_dict(parsed, unchecked=unchecked)

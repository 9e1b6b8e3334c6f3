from typing import get_args

from fastapi import APIRouter, HTTPException

from models.schema import Construction, TransferRequest
from routers.common import guarded, loaded_from, pick
from runner import execute
from toolkit_config import settings

router = APIRouter(prefix="/transfers", tags=["Transfers"])


@router.post("/{construction}")
def transfer(construction: str, request: TransferRequest):
    if construction not in get_args(Construction):
        raise HTTPException(status_code=404, detail=f"Unknown construction {construction}")
    return guarded(lambda: execute(
        "transfer", loaded_from(request), pick(request.length, settings.default_length),
        settings.search_cap, construction,
    ))

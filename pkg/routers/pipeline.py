from fastapi import APIRouter

from models.schema import PipelineRequest
from routers.common import guarded, loaded_from, pick
from runner import execute
from toolkit_config import settings

router = APIRouter(prefix="/pipeline", tags=["Transfers"])


@router.post("")
def pipeline(request: PipelineRequest):
    """H -> T lift, S -> T descent and S -> H restriction for a completely simple input."""
    return guarded(lambda: execute(
        "pipeline", loaded_from(request), pick(request.length, settings.default_length), settings.search_cap,
    ))

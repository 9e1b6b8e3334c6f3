from fastapi import APIRouter

from models.schema import ResolveRequest
from routers.common import guarded, loaded_from, pick
from runner import execute
from toolkit_config import settings

router = APIRouter(prefix="/bi", tags=["Resolutions"])


@router.post("")
def bi(request: ResolveRequest):
    return guarded(lambda: execute(
        "bi", loaded_from(request), pick(request.length, settings.default_length), settings.search_cap,
    ))

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
import logging

from toolkit_config import settings

logging.basicConfig(level=getattr(logging, settings.log_level))
logging.info("Semigroup resolution service is starting...")

# === Routers ===
from routers import bi, catalog, fp1, pipeline, resolutions, semigroups, semilattices, transfers
from algebra.catalog import catalog_names

# === Create FastAPI App ===
app = FastAPI(
    title="Semigroup Resolutions",
    version="1.0",
    openapi_url="/openapi.json",
)

# === CORS Middleware ===
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)

# === Include Routers ===
app.include_router(catalog.router)
app.include_router(semigroups.router)
app.include_router(resolutions.router)
app.include_router(transfers.router)
app.include_router(pipeline.router)
app.include_router(bi.router)
app.include_router(fp1.router)
app.include_router(semilattices.router)

# === Root Endpoint ===
@app.get("/")
def root():
    return {"message": "Semigroup resolution service", "catalog": catalog_names()}

# === Custom 404 Error Response ===
@app.exception_handler(404)
async def custom_404_handler(request, exc):
    detail = getattr(exc, "detail", None)
    if detail and detail != "Not Found":
        return JSONResponse(status_code=404, content={"detail": detail})
    return JSONResponse(
        status_code=404,
        content={"message": "Endpoint not found. Please check the URL."}
    )

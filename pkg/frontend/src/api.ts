// Thin client over the synthesis service's HTTP API.

export interface ModelInfo {
  config_hash: string;
  variant: string;
  max_resolution: number;
  step: number;
  latent_dim: number;
}

export interface SynthesizeResponse {
  images_png: string[];
  model: ModelInfo;
  timing_seconds: number;
}

export interface RasterizeResponse {
  mask_png: string;
  checksum: string;
}

export class ServiceError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

export class ServiceClient {
  constructor(
    private baseUrl: string,
    private fetchFn: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const body = await response.json();
    if (!response.ok) {
      throw new ServiceError(
        body.code ?? "error",
        body.message ?? JSON.stringify(body),
        response.status,
      );
    }
    return body as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("/v1/health");
  }

  model(): Promise<ModelInfo> {
    return this.request("/v1/model");
  }

  synthesize(
    maskPngBase64: string,
    seeds: number[],
    resolution?: number,
  ): Promise<SynthesizeResponse> {
    return this.request("/v1/synthesize", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({
        mask_png: maskPngBase64,
        seeds,
        resolution: resolution ?? null,
      }),
    });
  }

  rasterize(points: number[][], resolution: number): Promise<RasterizeResponse> {
    return this.request("/v1/rasterize", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ points, resolution }),
    });
  }
}

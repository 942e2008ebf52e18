// Thin fetch client for the inference service. The playground never computes
// scores itself; everything rendered comes verbatim from these responses.

import type { ModelsListing, PredictResponse } from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

async function asJson(response: Response): Promise<any> {
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    throw new ApiError(response.status, body.error ?? `HTTP ${response.status}`);
  }
  return body;
}

export class ServiceClient {
  constructor(readonly baseUrl: string) {}

  async getModels(signal?: AbortSignal): Promise<ModelsListing> {
    const response = await fetch(`${this.baseUrl}/models`, { signal });
    return asJson(response);
  }

  async predict(text: string, modelId?: string, signal?: AbortSignal): Promise<PredictResponse> {
    const payload: Record<string, string> = { text };
    if (modelId) payload.model = modelId;
    const response = await fetch(`${this.baseUrl}/predict`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
      signal,
    });
    return asJson(response);
  }
}

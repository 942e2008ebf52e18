// DOM shell: wires the controller to the static page. The service URL is
// configurable at load time via ?service=http://host:port (falling back to
// the input box value).

import { ServiceClient } from "./api.js";
import { PlaygroundController } from "./controller.js";
import { renderComparePanels, renderError, renderHistory } from "./render.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const serviceInput = el<HTMLInputElement>("service-url");
const connectButton = el<HTMLButtonElement>("connect");
const modelSelect = el<HTMLSelectElement>("model-select");
const textInput = el<HTMLTextAreaElement>("text-input");
const submitButton = el<HTMLButtonElement>("submit");
const compareButton = el<HTMLButtonElement>("compare");
const banner = el<HTMLDivElement>("banner");
const historyBox = el<HTMLDivElement>("history");
const panelsBox = el<HTMLDivElement>("panels");

const fromQuery = new URLSearchParams(window.location.search).get("service");
if (fromQuery) serviceInput.value = fromQuery;

let controller = new PlaygroundController(new ServiceClient(serviceInput.value));
let modelIds: string[] = [];

function setBanner(html: string) {
  banner.innerHTML = html;
}

async function connect() {
  controller = new PlaygroundController(new ServiceClient(serviceInput.value));
  setBanner("");
  panelsBox.innerHTML = "";
  historyBox.innerHTML = renderHistory(controller.history.newestFirst());
  try {
    const listing = await controller.client.getModels();
    modelIds = listing.models.map((m) => m.id);
    modelSelect.innerHTML = listing.models
      .map((m) => `<option value="${m.id}"${m.id === listing.default ? " selected" : ""}>${m.id} (${m.model_type})</option>`)
      .join("");
    compareButton.disabled = modelIds.length < 2;
    submitButton.disabled = false;
  } catch (err) {
    setBanner(renderError(`cannot reach service: ${String(err)}`));
    submitButton.disabled = true;
    compareButton.disabled = true;
  }
}

async function submit() {
  // The input box is left untouched so a failed submission can be retried.
  const outcome = await controller.submitText(textInput.value, modelSelect.value);
  if (outcome.kind === "error") {
    setBanner(renderError(outcome.message));
    return;
  }
  if (outcome.kind === "stale") return;
  setBanner("");
  historyBox.innerHTML = renderHistory(controller.history.newestFirst());
}

async function compare() {
  const results = await controller.compareModels(textInput.value, modelIds);
  panelsBox.innerHTML = renderComparePanels(results);
}

connectButton.addEventListener("click", () => void connect());
submitButton.addEventListener("click", () => void submit());
compareButton.addEventListener("click", () => void compare());
textInput.addEventListener("keydown", (event) => {
  if (event.key === "Enter" && (event.ctrlKey || event.metaKey)) void submit();
});

void connect();
